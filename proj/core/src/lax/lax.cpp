#include "weylham/lax.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "weylham/expr.hpp"
#include "weylham/maps.hpp"

namespace weylham {

namespace {

Polynomial zero_on(const AlphabetPtr& a) { return Polynomial(a, BigRational(0)); }

Polynomial coeff(const std::vector<Polynomial>& c, std::size_t k, const AlphabetPtr& a) {
  return k < c.size() ? c[k] : zero_on(a);
}

std::string monomial_string(const AlphabetPtr& al, const Monomial& m) {
  return Polynomial(al, detail::QPoly::from_terms({{m, BigRational(1)}})).to_string();
}

}  // namespace

MatrixPencil::MatrixPencil(std::array<Polynomial, 4> entries, std::string spectral)
    : e_(std::move(entries)), spectral_(std::move(spectral)) {
  AlphabetPtr a;
  for (auto& x : e_)
    if (x.alphabet()) a = a ? common_alphabet(a, x.alphabet()) : x.alphabet();
  if (a)
    for (auto& x : e_) x = x.rebased(a);
}

MatrixPencil MatrixPencil::parse(const std::array<std::string, 4>& grid, const AlphabetPtr& alphabet,
                                 std::string spectral) {
  std::array<Polynomial, 4> e;
  for (std::size_t i = 0; i < 4; ++i) e[i] = parse_poly(grid[i], alphabet);
  return MatrixPencil(std::move(e), std::move(spectral));
}

AlphabetPtr MatrixPencil::alphabet() const { return e_[0].alphabet(); }

unsigned MatrixPencil::spectral_degree() const {
  unsigned d = 0;
  for (auto& x : e_)
    if (x.alphabet() && x.alphabet()->contains(spectral_)) d = std::max(d, x.degree_in(spectral_));
  return d;
}

bool MatrixPencil::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial MatrixPencil::determinant() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

MatrixPencil MatrixPencil::rebased(const AlphabetPtr& target) const {
  return map([&](const Polynomial& p) { return p.rebased(target); });
}

MatrixPencil MatrixPencil::derivative(const std::string& sym) const {
  return map([&](const Polynomial& p) { return p.depends_on(sym) ? p.derivative(sym) : zero_on(p.alphabet()); });
}

MatrixPencil MatrixPencil::map(const std::function<Polynomial(const Polynomial&)>& f) const {
  return MatrixPencil({f(e_[0]), f(e_[1]), f(e_[2]), f(e_[3])}, spectral_);
}

std::string MatrixPencil::to_string() const {
  return "[[" + e_[0].to_string() + ", " + e_[1].to_string() + "], [" + e_[2].to_string() + ", " +
         e_[3].to_string() + "]]";
}

MatrixPencil operator+(const MatrixPencil& a, const MatrixPencil& b) {
  return MatrixPencil({a.e_[0] + b.e_[0], a.e_[1] + b.e_[1], a.e_[2] + b.e_[2], a.e_[3] + b.e_[3]}, a.spectral_);
}

MatrixPencil operator-(const MatrixPencil& a, const MatrixPencil& b) { return a + (-b); }

MatrixPencil operator*(const MatrixPencil& a, const MatrixPencil& b) {
  const auto& x = a.e_;
  const auto& y = b.e_;
  return MatrixPencil({x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                       x[2] * y[1] + x[3] * y[3]},
                      a.spectral_);
}

MatrixPencil MatrixPencil::operator-() const {
  return map([](const Polynomial& p) { return -p; });
}

MatrixPencil MatrixPencil::scaled(const BigRational& c) const {
  return map([&](const Polynomial& p) { return p.scaled(c); });
}

MatrixPencil zero_curvature_residual(const MatrixPencil& A0, const MatrixPencil& B0, const TotalSystem& sys0,
                                     const std::string& time, const BigRational& delta) {
  const std::string& T = A0.spectral();
  auto al = merged_alphabet({A0.alphabet(), B0.alphabet(), sys0.alphabet(), Alphabet::make({T})});
  auto A = A0.rebased(al), B = B0.rebased(al);
  auto sys = sys0.rebased(al);
  std::vector<Polynomial> flow;
  for (auto& f : sys.flow(time)) {
    if (!f.is_polynomial()) throw std::invalid_argument("zero_curvature_residual needs a polynomial flow");
    flow.push_back(sys.reduce(f.as_polynomial()));
  }
  MatrixPencil dA = A.derivative(time);
  for (std::size_t j = 0; j < flow.size(); ++j) {
    const auto& v = sys.variables()[j];
    dA = dA + A.derivative(v).map([&](const Polynomial& p) { return p * flow[j]; });
  }
  Polynomial t = Polynomial::symbol(al, T);
  MatrixPencil tdB = B.derivative(T).map([&](const Polynomial& p) { return (p * t).scaled(delta); });
  MatrixPencil r = dA - tdB + A * B - B * A;
  return r.map([&](const Polynomial& p) { return sys.reduce(p); });
}

std::vector<RationalFunction> extract_flow(const MatrixPencil& A0, const MatrixPencil& B0,
                                           const std::vector<std::string>& variables, const BigRational& delta) {
  const std::string& T = A0.spectral();
  auto al = merged_alphabet({A0.alphabet(), B0.alphabet(), Alphabet::make(variables), Alphabet::make({T})});
  auto A = A0.rebased(al), B = B0.rebased(al);
  Polynomial t = Polynomial::symbol(al, T);
  MatrixPencil rest = A * B - B * A - B.derivative(T).map([&](const Polynomial& p) { return (p * t).scaled(delta); });
  std::vector<MatrixPencil> dA;
  for (auto& v : variables) dA.push_back(A.derivative(v));

  std::size_t n = variables.size();
  struct Row {
    std::vector<RationalFunction> a;
    RationalFunction b;
    std::string label;
  };
  std::vector<Row> rows;
  unsigned deg = std::max(A.spectral_degree(), B.spectral_degree()) + 2;
  const char* names[] = {"(1,1)", "(1,2)", "(2,1)", "(2,2)"};
  for (std::size_t e = 0; e < 4; ++e) {
    auto rc = rest.entries()[e].coefficients_in(T);
    std::vector<std::vector<Polynomial>> dc;
    for (auto& d : dA) dc.push_back(d.entries()[e].coefficients_in(T));
    for (unsigned k = 0; k <= deg; ++k) {
      Row r;
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        r.a.emplace_back(coeff(dc[j], k, al));
        any = any || !r.a.back().is_zero();
      }
      r.b = RationalFunction(-coeff(rc, k, al));
      if (!any && r.b.is_zero()) continue;
      r.label = std::string("entry ") + names[e] + " coefficient of " + T + "^" + std::to_string(k);
      rows.push_back(std::move(r));
    }
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p].a[col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    RationalFunction inv = rows[r].a[col].inverse();
    for (auto& x : rows[r].a) x = x * inv;
    rows[r].b = rows[r].b * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i].a[col].is_zero()) continue;
      RationalFunction f = rows[i].a[col];
      for (std::size_t j = col; j < n; ++j)
        if (!rows[r].a[j].is_zero()) rows[i].a[j] = rows[i].a[j] - f * rows[r].a[j];
      rows[i].b = rows[i].b - f * rows[r].b;
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<std::string> conflicts;
  for (std::size_t i = r; i < rows.size(); ++i)
    if (!rows[i].b.is_zero()) conflicts.push_back(rows[i].label);
  if (!conflicts.empty()) {
    std::string msg = "inconsistent spectral coefficients:";
    for (auto& c : conflicts) msg += " " + c + ";";
    throw std::runtime_error(msg);
  }
  if (r < n) {
    std::string msg = "underdetermined: no equation fixes";
    std::vector<bool> fixed(n, false);
    for (auto c : pivot_col) fixed[c] = true;
    for (std::size_t j = 0; j < n; ++j)
      if (!fixed[j]) msg += " d" + variables[j];
    throw std::runtime_error(msg);
  }
  std::vector<RationalFunction> out(n);
  for (std::size_t i = 0; i < n; ++i) out[pivot_col[i]] = rows[i].b;
  return out;
}

Polynomial SpectralInvariants::reconstruct(const std::string& spectral) const {
  auto al = det.alphabet();
  Polynomial t = Polynomial::symbol(al, spectral);
  Polynomial r = zero_on(al);
  std::set<unsigned> covered;
  for (auto& n : named) {
    r = r + n.expr.scaled(n.scale) * t.pow(n.power);
    covered.insert(n.power);
  }
  for (unsigned k = 0; k < coefficients.size(); ++k)
    if (!covered.count(k)) r = r + coefficients[k] * t.pow(k);
  return r;
}

const Polynomial& SpectralInvariants::operator[](const std::string& name) const {
  for (auto& n : named)
    if (n.name == name) return n.expr;
  throw std::out_of_range("no spectral invariant named '" + name + "'");
}

SpectralInvariants det_expansion(const MatrixPencil& A) {
  SpectralInvariants s;
  s.det = A.determinant();
  s.coefficients = s.det.coefficients_in(A.spectral());
  if (s.coefficients.size() != 6)
    throw std::invalid_argument("det(A) has spectral degree " + std::to_string(s.coefficients.size() - 1) +
                                ", expected 5");
  const std::pair<const char*, int> layout[] = {{"eps", 1}, {"K1", 1}, {"K2", 4}, {"K4", -8}, {"K3", -32}};
  for (unsigned k = 0; k < 5; ++k) {
    BigRational sc(layout[k].second);
    s.named.push_back({layout[k].first, k, sc, s.coefficients[k].scaled(1 / sc)});
  }
  return s;
}

namespace {

std::map<std::vector<unsigned>, Polynomial> split_by(const Polynomial& p, const std::vector<std::size_t>& idx) {
  std::map<std::vector<unsigned>, std::vector<detail::QPoly::TermT>> parts;
  for (auto& t : p.terms()) {
    std::vector<unsigned> key;
    Monomial rest = t.m;
    for (auto i : idx) key.push_back(t.m[i]), rest.set(i, 0);
    parts[key].push_back({rest, t.c});
  }
  std::map<std::vector<unsigned>, Polynomial> out;
  for (auto& [k, v] : parts) out.emplace(k, Polynomial(p.alphabet(), detail::QPoly::from_terms(std::move(v))));
  return out;
}

}  // namespace

std::optional<BigRational> proportional(const Polynomial& F0, const Polynomial& G0) {
  auto al = merged_alphabet({F0.alphabet(), G0.alphabet()});
  Polynomial F = F0.rebased(al), G = G0.rebased(al);
  if (G.is_zero()) return F.is_zero() ? std::optional<BigRational>(BigRational(0)) : std::nullopt;
  if (F.is_zero()) return BigRational(0);
  if (!(F.terms().front().m == G.terms().front().m)) return std::nullopt;
  BigRational c = F.terms().front().c / G.terms().front().c;
  if (F == G.scaled(c)) return c;
  return std::nullopt;
}

std::optional<AffineMatch> affine_match(const Polynomial& a0, const Polynomial& b0,
                                        const std::vector<std::string>& variables) {
  auto al = merged_alphabet({a0.alphabet(), b0.alphabet(), Alphabet::make(variables)});
  Polynomial a = a0.rebased(al), b = b0.rebased(al);
  std::vector<std::size_t> idx;
  for (auto& v : variables) idx.push_back(al->index(v));
  auto pa = split_by(a, idx), pb = split_by(b, idx);
  std::vector<unsigned> zero(idx.size(), 0);
  std::optional<BigRational> scale;
  std::set<std::vector<unsigned>> keys;
  for (auto& [k, v] : pa) keys.insert(k);
  for (auto& [k, v] : pb) keys.insert(k);
  for (auto& k : keys) {
    if (k == zero) continue;
    auto ia = pa.find(k);
    auto ib = pb.find(k);
    Polynomial ca = ia == pa.end() ? zero_on(al) : ia->second;
    Polynomial cb = ib == pb.end() ? zero_on(al) : ib->second;
    if (cb.is_zero()) {
      if (!ca.is_zero()) return std::nullopt;
      continue;
    }
    auto c = proportional(ca, cb);
    if (!c || (scale && *scale != *c)) return std::nullopt;
    scale = c;
  }
  if (!scale || *scale == 0) return std::nullopt;
  return AffineMatch{*scale, a - b.scaled(*scale)};
}

std::vector<std::string> coefficient_differences(const Polynomial& c0, const Polynomial& p0, std::size_t limit) {
  auto al = merged_alphabet({c0.alphabet(), p0.alphabet()});
  Polynomial c = c0.rebased(al), p = p0.rebased(al);
  Polynomial d = c - p;
  std::vector<std::string> out;
  for (auto& t : d.terms()) {
    if (out.size() == limit) {
      out.push_back("... " + std::to_string(d.num_terms() - limit) + " more");
      break;
    }
    BigRational cc = 0, pc = 0;
    for (auto& x : c.terms())
      if (x.m == t.m) cc = x.c;
    for (auto& x : p.terms())
      if (x.m == t.m) pc = x.c;
    out.push_back(monomial_string(al, t.m) + ": computed " + cc.get_str() + ", printed " + pc.get_str());
  }
  return out;
}

Surface surface_from_integrals(const Polynomial& f1, const Polynomial& f2, const std::string& eliminate,
                               const std::vector<std::string>& kept) {
  Surface s;
  s.F = resultant(f1, f2, eliminate);
  auto al = s.F.alphabet();
  std::vector<std::size_t> idx;
  for (auto& v : kept)
    if (al->contains(v)) idx.push_back(al->index(v));
  for (auto& t : s.F.terms()) {
    unsigned d = 0;
    for (auto i : idx) d += t.m[i];
    s.degree = std::max(s.degree, d);
  }
  return s;
}

}  // namespace weylham
