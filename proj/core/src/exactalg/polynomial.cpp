#include "weylham/polynomial.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

#include "zgcd.hpp"

namespace weylham {

using detail::QPoly;

AlphabetPtr common_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (*a == *b) return a;
  throw std::invalid_argument("alphabet mismatch");
}

void Polynomial::check_size() const {
  if (!alpha_) return;
  // exponents beyond the alphabet would be invisible to every name-based API
  for (auto& t : p_.terms())
    for (std::size_t i = alpha_->size(); i < kMaxSymbols; ++i)
      if (t.m[i]) throw std::invalid_argument("monomial uses a slot outside the alphabet");
}

Polynomial Polynomial::symbol(const AlphabetPtr& a, std::string_view name) {
  Monomial m;
  m.set(a->index(name), 1);
  return {a, QPoly(m, BigRational(1))};
}

BigRational Polynomial::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial is not constant: " + to_string());
  return p_.constant_term();
}

unsigned Polynomial::degree_in(std::string_view sym) const {
  if (!alpha_) return 0;
  auto i = alpha_->find(sym);
  return i ? p_.degree_in(*i) : 0;
}

bool Polynomial::depends_on(std::string_view sym) const {
  if (!alpha_) return false;
  auto i = alpha_->find(sym);
  return i && p_.depends_on(*i);
}

std::vector<std::string> Polynomial::free_symbols() const {
  std::vector<std::string> out;
  if (!alpha_) return out;
  for (std::size_t i = 0; i < alpha_->size(); ++i)
    if (p_.depends_on(i)) out.push_back(alpha_->name(i));
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  return {common_alphabet(a.alpha_, b.alpha_), a.p_ + b.p_};
}
Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return {common_alphabet(a.alpha_, b.alpha_), a.p_ - b.p_};
}
namespace {

// products of sizable polynomials run over Z: rational coefficient products
// would pay a gcd per term
QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.size() * b.size() <= 64) return a * b;
  mpq_class ca, cb;
  auto za = detail::to_primitive_z(a, &ca), zb = detail::to_primitive_z(b, &cb);
  return detail::to_q(za * zb).scaled(ca * cb);
}

std::optional<QPoly> qdiv(const QPoly& a, const QPoly& b) {
  if (b.size() == 1 || a.is_zero()) return a.divide_exact(b);
  mpq_class ca, cb;
  auto za = detail::to_primitive_z(a, &ca), zb = detail::to_primitive_z(b, &cb);
  auto q = za.divide_exact(zb);  // Gauss: zb primitive, so Q-divisibility implies Z-divisibility
  if (!q) return std::nullopt;
  return detail::to_q(*q).scaled(ca / cb);
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  return {common_alphabet(a.alpha_, b.alpha_), qmul(a.p_, b.p_)};
}
Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r(alpha_, BigRational(1)), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  common_alphabet(a.alpha_, b.alpha_);
  return a.p_ == b.p_;
}

Polynomial Polynomial::derivative(std::string_view sym) const {
  if (!alpha_) return {alpha_, QPoly{}};
  auto i = alpha_->find(sym);
  if (!i) throw std::out_of_range("unknown symbol '" + std::string(sym) + "'");
  return derivative(*i);
}

std::vector<Polynomial> Polynomial::coefficients_in(std::string_view sym) const {
  std::vector<Polynomial> out;
  if (!alpha_ || !alpha_->find(sym)) {
    out.push_back(*this);
    return out;
  }
  for (auto& c : p_.coefficients_in(alpha_->index(sym))) out.emplace_back(alpha_, std::move(c));
  return out;
}

Polynomial Polynomial::rebased(const AlphabetPtr& target) const {
  if (same_alphabet(alpha_, target)) return {target, p_};
  if (!alpha_ || p_.is_constant()) return {target, p_};
  std::vector<std::size_t> slot(alpha_->size(), kMaxSymbols);
  for (std::size_t i = 0; i < alpha_->size(); ++i)
    if (auto j = target->find(alpha_->name(i))) slot[i] = *j;
  std::vector<QPoly::TermT> out;
  out.reserve(p_.size());
  for (auto& t : p_.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < alpha_->size(); ++i) {
      if (!t.m[i]) continue;
      if (slot[i] == kMaxSymbols)
        throw std::invalid_argument("symbol '" + alpha_->name(i) + "' missing from target alphabet");
      m.set(slot[i], t.m[i]);
    }
    out.push_back({m, t.c});
  }
  return {target, QPoly::from_terms(std::move(out))};
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& bindings) const {
  AlphabetPtr target = alpha_;
  for (auto& [k, v] : bindings)
    if (v.alphabet()) {
      target = v.alphabet();
      break;
    }
  if (!alpha_) return {target, p_};
  std::size_t n = alpha_->size();
  // bound slots get substituted; the rest only move to the target alphabet
  std::vector<std::size_t> bound;
  std::vector<Polynomial> value(n);
  std::vector<int> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!p_.depends_on(i)) continue;
    auto it = bindings.find(alpha_->name(i));
    if (it != bindings.end()) {
      value[i] = it->second.rebased(target);
      bound.push_back(i);
    } else if (target != alpha_) {
      slot[i] = static_cast<int>(target->index(alpha_->name(i)));
    } else {
      slot[i] = static_cast<int>(i);
    }
  }
  if (bound.empty()) return rebased(target);
  std::map<std::vector<unsigned>, std::vector<detail::QPoly::TermT>> groups;
  for (auto& t : p_.terms()) {
    std::vector<unsigned> key(bound.size());
    for (std::size_t k = 0; k < bound.size(); ++k) key[k] = t.m[bound[k]];
    Monomial rest;
    for (std::size_t i = 0; i < n; ++i)
      if (slot[i] >= 0 && t.m[i]) rest.set(static_cast<std::size_t>(slot[i]), t.m[i]);
    groups[key].push_back({rest, t.c});
  }
  std::vector<std::vector<Polynomial>> pw(n);
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& v = pw[i];
    if (v.empty()) v.push_back(Polynomial(target, BigRational(1)));
    while (v.size() <= e) v.push_back(v.back() * value[i]);
    return v[e];
  };
  Polynomial acc(target, BigRational(0));
  for (auto& [key, terms] : groups) {
    Polynomial part(target, detail::QPoly::from_terms(std::move(terms)));
    for (std::size_t k = 0; k < bound.size(); ++k)
      if (key[k]) part = part * power(bound[k], key[k]);
    acc = acc + part;
  }
  return acc;
}

Polynomial Polynomial::divided_by(const Polynomial& d) const {
  auto a = common_alphabet(alpha_, d.alpha_);
  auto q = qdiv(p_, d.p_);
  if (!q) throw std::domain_error("polynomial division is not exact");
  return {a, std::move(*q)};
}

bool Polynomial::divisible_by(const Polynomial& d) const {
  common_alphabet(alpha_, d.alpha_);
  return qdiv(p_, d.p_).has_value();
}

Polynomial Polynomial::primitive() const { return {alpha_, detail::to_q(detail::to_primitive_z(p_))}; }

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / p_.lead().c);
}

std::string Polynomial::to_string() const {
  if (p_.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : p_.terms()) {
    BigRational c = t.c;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = c == 1;
    if (!unit || t.m.is_one()) {
      os << c.get_str();
      if (!t.m.is_one()) os << "*";
    }
    bool firstvar = true;
    for (std::size_t i = 0; alpha_ && i < alpha_->size(); ++i) {
      unsigned e = t.m[i];
      if (!e) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << alpha_->name(i);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  auto al = common_alphabet(a.alphabet(), b.alphabet());
  if (a.is_zero() && b.is_zero()) return {al, BigRational(0)};
  auto g = detail::zgcd(detail::to_primitive_z(a.raw()), detail::to_primitive_z(b.raw()));
  return Polynomial(al, detail::to_q(g)).monic();
}

Polynomial resultant(const Polynomial& f, const Polynomial& g, std::string_view sym) {
  auto al = common_alphabet(f.alphabet(), g.alphabet());
  if (!f.depends_on(sym) || !g.depends_on(sym))
    throw std::invalid_argument("resultant: both polynomials must depend on '" + std::string(sym) + "'");
  auto fc = f.coefficients_in(sym), gc = g.coefficients_in(sym);
  std::size_t m = fc.size() - 1, n = gc.size() - 1, N = m + n;
  // Sylvester matrix, highest power first
  std::vector<std::vector<Polynomial>> M(N, std::vector<Polynomial>(N, Polynomial(al, BigRational(0))));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) M[r][r + k] = fc[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) M[n + r][r + k] = gc[n - k];
  // fraction-free Bareiss elimination
  int sign = 1;
  Polynomial prev(al, BigRational(1));
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < N && M[p][k].is_zero()) ++p;
      if (p == N) return Polynomial(al, BigRational(0));
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i)
      for (std::size_t j = k + 1; j < N; ++j)
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).divided_by(prev);
    prev = M[k][k];
  }
  Polynomial r = M[N - 1][N - 1];
  if (sign < 0) r = -r;
  return r.primitive();
}

}  // namespace weylham
