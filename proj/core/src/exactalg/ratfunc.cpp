#include "weylham/ratfunc.hpp"

#include <set>
#include <stdexcept>

namespace weylham {

namespace {

bool is_one(const Polynomial& p) { return p.is_constant() && p.constant_value() == 1; }

RationalFunction normalize(Polynomial n, Polynomial d) {
  auto al = common_alphabet(n.alphabet(), d.alphabet());
  if (d.is_zero()) throw std::domain_error("zero denominator");
  if (n.is_zero()) return RationalFunction::from_normalized(Polynomial(al, BigRational(0)), Polynomial(al, BigRational(1)));
  if (d.is_constant()) {
    BigRational c = d.constant_value();
    return RationalFunction::from_normalized(n.scaled(1 / c), Polynomial(al, BigRational(1)));
  }
  if (d.num_terms() == 1) {
    // monomial denominator: only a monomial can cancel
    Monomial g = Monomial::gcd(n.raw().monomial_content(), d.raw().lead().m);
    BigRational c = d.leading_coefficient();
    detail::QPoly gp(g, c);
    return RationalFunction::from_normalized(Polynomial(al, *n.raw().divide_exact(gp)),
                                             Polynomial(al, *d.raw().divide_exact(gp)));
  }
  if (n.is_constant()) {
    BigRational c = d.leading_coefficient();
    return RationalFunction::from_normalized(n.scaled(1 / c), d.scaled(1 / c));
  }
  Polynomial g = gcd(n, d);
  if (!is_one(g)) {
    n = n.divided_by(g);
    d = d.divided_by(g);
  }
  BigRational c = d.leading_coefficient();
  if (c != 1) {
    n = n.scaled(1 / c);
    d = d.scaled(1 / c);
  }
  return RationalFunction::from_normalized(std::move(n), std::move(d));
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  *this = normalize(std::move(num), std::move(den));
}

RationalFunction RationalFunction::from_normalized(Polynomial num, Polynomial den) {
  RationalFunction r;
  auto al = common_alphabet(num.alphabet(), den.alphabet());
  r.num_ = num.rebased(al);
  r.den_ = den.rebased(al);
  return r;
}

void RationalFunction::adopt() { den_ = Polynomial(num_.alphabet(), BigRational(1)); }

Polynomial RationalFunction::as_polynomial() const {
  if (!is_polynomial()) throw std::domain_error("not a polynomial: " + to_string());
  return num_.scaled(1 / den_.constant_value());
}

std::vector<std::string> RationalFunction::free_symbols() const {
  std::set<std::string> s;
  for (auto& x : num_.free_symbols()) s.insert(x);
  for (auto& x : den_.free_symbols()) s.insert(x);
  return {s.begin(), s.end()};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b.rebased(common_alphabet(a.alphabet(), b.alphabet()));
  if (b.is_zero()) return a.rebased(common_alphabet(a.alphabet(), b.alphabet()));
  if (a.is_polynomial() && b.is_polynomial())
    return RationalFunction::from_normalized(a.num_ + b.num_, a.den_ * b.den_);
  if (a.den_ == b.den_) return normalize(a.num_ + b.num_, a.den_);
  if (a.is_polynomial())
    return RationalFunction::from_normalized(a.num_ * b.den_ + b.num_, b.den_);
  if (b.is_polynomial())
    return RationalFunction::from_normalized(a.num_ + b.num_ * a.den_, a.den_);
  Polynomial g = gcd(a.den_, b.den_);
  if (is_one(g))
    return RationalFunction::from_normalized(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  Polynomial ad = a.den_.divided_by(g), bd = b.den_.divided_by(g);
  Polynomial t = a.num_ * bd + b.num_ * ad;
  if (t.is_zero()) return RationalFunction::from_normalized(t, Polynomial(t.alphabet(), BigRational(1)));
  Polynomial g2 = gcd(t, g);
  if (!is_one(g2)) {
    t = t.divided_by(g2);
    g = g.divided_by(g2);
  }
  return RationalFunction::from_normalized(t, ad * bd * g);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  auto al = common_alphabet(a.alphabet(), b.alphabet());
  if (a.is_zero() || b.is_zero())
    return RationalFunction::from_normalized(Polynomial(al, BigRational(0)), Polynomial(al, BigRational(1)));
  if (b.is_constant()) return RationalFunction::from_normalized(a.num_.scaled(b.num_.constant_value()), a.den_);
  if (a.is_constant()) return RationalFunction::from_normalized(b.num_.scaled(a.num_.constant_value()), b.den_);
  if (a.is_polynomial() && b.is_polynomial())
    return RationalFunction::from_normalized(a.num_ * b.num_, Polynomial(al, BigRational(1)));
  Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_constant()) {
    Polynomial g = gcd(an, bd);
    if (!is_one(g)) an = an.divided_by(g), bd = bd.divided_by(g);
  }
  if (!ad.is_constant()) {
    Polynomial g = gcd(bn, ad);
    if (!is_one(g)) bn = bn.divided_by(g), ad = ad.divided_by(g);
  }
  Polynomial d = ad * bd;
  BigRational c = d.leading_coefficient();
  return RationalFunction::from_normalized((an * bn).scaled(1 / c), d.scaled(1 / c));
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  BigRational c = num_.leading_coefficient();
  return from_normalized(den_.scaled(1 / c), num_.scaled(1 / c));
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  return from_normalized(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
}

RationalFunction over_power(const Polynomial& p, const Polynomial& l0, unsigned k) {
  auto al = common_alphabet(p.alphabet(), l0.alphabet());
  if (p.is_zero() || k == 0 || l0.is_constant()) return RationalFunction(p, l0.pow(k));
  Polynomial l = l0.monic();
  Polynomial cur = p, rest = l.pow(k);
  for (unsigned i = 0; i < k; ++i) {
    Polynomial h = gcd(cur, l);
    if (is_one(h)) break;
    cur = cur.divided_by(h);
    rest = rest.divided_by(h);
  }
  BigRational c = l0.leading_coefficient();
  mpq_class ck;
  mpz_pow_ui(ck.get_num_mpz_t(), c.get_num_mpz_t(), k);
  mpz_pow_ui(ck.get_den_mpz_t(), c.get_den_mpz_t(), k);
  ck.canonicalize();
  // p / l0^k = p / (ck * l^k)
  return RationalFunction::from_normalized(cur.scaled(1 / ck), rest);
}

RationalFunction RationalFunction::derivative(std::string_view sym) const {
  Polynomial dn = num_.derivative(sym);
  if (den_.is_constant()) return from_normalized(dn, den_);
  Polynomial dd = den_.derivative(sym);
  if (dd.is_zero()) return RationalFunction(dn, den_);
  return over_power(dn * den_ - num_ * dd, den_, 2);
}

Polynomial squarefree_part(const Polynomial& d) {
  if (d.is_constant()) return Polynomial(d.alphabet(), BigRational(1));
  Polynomial g = d;
  for (auto& v : d.free_symbols()) {
    g = gcd(g, d.derivative(v));
    if (g.is_constant()) break;
  }
  return d.divided_by(g).primitive();
}

BaseBindings over_common_base(const Bindings& bindings) {
  BaseBindings out;
  for (auto& [k, v] : bindings)
    if (v.alphabet()) {
      out.target = v.alphabet();
      break;
    }
  out.base = Polynomial(out.target, BigRational(1));
  for (auto& [k, v] : bindings) {
    if (v.is_polynomial()) continue;
    Polynomial r = squarefree_part(v.den().rebased(out.target));
    out.base = out.base * r.divided_by(gcd(out.base, r));
  }
  out.base = out.base.primitive();
  for (auto& [k, v0] : bindings) {
    RationalFunction v = v0.rebased(out.target);
    if (v.is_polynomial()) {
      out.values[k] = {v.as_polynomial(), 0};
      continue;
    }
    Polynomial be = out.base;
    unsigned e = 1;
    while (!be.divisible_by(v.den())) {
      be = be * out.base;
      if (++e > 4096) throw std::logic_error("common base does not absorb a denominator");
    }
    out.values[k] = {v.num() * be.divided_by(v.den()), e};
  }
  return out;
}

PowerFraction substitute_over_base(const Polynomial& p, const BaseBindings& b) {
  AlphabetPtr target = b.target ? b.target : p.alphabet();
  if (!p.alphabet() || p.is_constant()) return {p.rebased(target), 0};
  const auto& src = *p.alphabet();
  std::size_t n = src.size();
  std::vector<const Polynomial*> val(n, nullptr);
  std::vector<Polynomial> own(n);
  std::vector<unsigned> e(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.raw().depends_on(i)) continue;
    auto it = b.values.find(src.name(i));
    if (it != b.values.end()) {
      val[i] = &it->second.first;
      e[i] = it->second.second;
    } else {
      own[i] = Polynomial::symbol(target, src.name(i));
      val[i] = &own[i];
    }
  }
  unsigned dmax = 0;
  for (auto& t : p.terms()) {
    unsigned d = 0;
    for (std::size_t i = 0; i < n; ++i) d += t.m[i] * e[i];
    dmax = std::max(dmax, d);
  }
  std::vector<std::vector<Polynomial>> pw(n);
  std::vector<Polynomial> bpw{Polynomial(target, BigRational(1))};
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& v = pw[i];
    if (v.empty()) v.push_back(Polynomial(target, BigRational(1)));
    while (v.size() <= k) v.push_back(v.back() * *val[i]);
    return v[k];
  };
  // group terms by their missing base power so each power multiplies once
  std::map<unsigned, Polynomial> by_gap;
  for (auto& t : p.terms()) {
    Polynomial term(target, t.c);
    unsigned d = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (t.m[i]) {
        term = term * power(i, t.m[i]);
        d += t.m[i] * e[i];
      }
    auto [it, fresh] = by_gap.try_emplace(dmax - d, term);
    if (!fresh) it->second = it->second + term;
  }
  Polynomial acc(target, BigRational(0));
  for (auto& [gap, part] : by_gap) {
    while (bpw.size() <= gap) bpw.push_back(bpw.back() * b.base);
    acc = acc + part * bpw[gap];
  }
  return {acc, dmax};
}

RationalFunction substitute_poly(const Polynomial& p, const Bindings& bindings) {
  auto b = over_common_base(bindings);
  auto h = substitute_over_base(p, b);
  if (h.power == 0) return RationalFunction(h.num);
  return over_power(h.num, b.base, h.power);
}

Fraction substitute_lazy(const Polynomial& p, const Bindings& bindings) {
  auto b = over_common_base(bindings);
  auto h = substitute_over_base(p, b);
  return {h.num, b.base.pow(h.power)};
}

Fraction substitute_lazy(const RationalFunction& f, const BaseBindings& b) {
  auto hn = substitute_over_base(f.num(), b);
  if (f.den().is_constant()) return {hn.num, b.base.pow(hn.power).scaled(f.den().constant_value())};
  auto hd = substitute_over_base(f.den(), b);
  if (hd.num.is_zero()) throw std::domain_error("substitution makes the denominator vanish identically");
  if (hn.power >= hd.power) return {hn.num, hd.num * b.base.pow(hn.power - hd.power)};
  return {hn.num * b.base.pow(hd.power - hn.power), hd.num};
}

Fraction substitute_lazy(const RationalFunction& f, const Bindings& bindings) {
  return substitute_lazy(f, over_common_base(bindings));
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.den == b.den) return {a.num + b.num, a.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  if (a.den == b.den) return {a.num - b.num, a.den};
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

Fraction operator*(const Fraction& a, const Fraction& b) { return {a.num * b.num, a.den * b.den}; }

Fraction reduce(const Fraction& f, const std::map<std::string, Polynomial>& bindings) {
  if (bindings.empty()) return f;
  Fraction r{f.num.substitute(bindings), f.den.substitute(bindings)};
  if (r.den.is_zero()) throw std::domain_error("parameter reduction makes a denominator vanish");
  return r;
}

RationalFunction RationalFunction::substitute(const Bindings& bindings) const {
  auto b = over_common_base(bindings);
  auto sub = [&](const Polynomial& p) {
    auto h = substitute_over_base(p, b);
    return h.power == 0 ? RationalFunction(h.num) : over_power(h.num, b.base, h.power);
  };
  RationalFunction n = sub(num_);
  if (den_.is_constant()) return from_normalized(n.num().scaled(1 / den_.constant_value()), n.den());
  RationalFunction d = sub(den_);
  if (d.is_zero()) throw std::domain_error("substitution makes the denominator vanish identically");
  return n / d;
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

LaurentSplit laurent_split(const RationalFunction& f, std::string_view sym) {
  auto al = f.alphabet();
  auto dc = f.den().coefficients_in(sym);
  std::size_t k = 0, nonzero = 0;
  for (std::size_t j = 0; j < dc.size(); ++j)
    if (!dc[j].is_zero()) ++nonzero, k = j;
  if (nonzero != 1)
    throw std::domain_error("non-Laurent denominator in " + std::string(sym) + ": " + f.den().to_string());
  const Polynomial& unit = dc[k];
  auto nc = f.num().coefficients_in(sym);
  Polynomial hi(al, BigRational(0)), lo(al, BigRational(0));
  Polynomial s = al && al->contains(sym) ? Polynomial::symbol(al, sym) : Polynomial(al, BigRational(1));
  for (std::size_t j = 0; j < nc.size(); ++j) {
    if (nc[j].is_zero()) continue;
    if (j >= k)
      hi = hi + nc[j] * s.pow(static_cast<unsigned>(j - k));
    else
      lo = lo + nc[j] * s.pow(static_cast<unsigned>(j));
  }
  return {RationalFunction(hi, unit), RationalFunction(lo, unit * s.pow(static_cast<unsigned>(k)))};
}

}  // namespace weylham
