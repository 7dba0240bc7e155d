#include "zgcd.hpp"

#include <optional>
#include <stdexcept>

namespace weylham::detail {

namespace {

mpz_class abs_max_coeff(const ZPoly& f) {
  mpz_class m = 0;
  for (auto& t : f.terms())
    if (mpz_cmpabs(t.c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(t.c);
  return m;
}

ZPoly div_scalar(const ZPoly& f, const mpz_class& c) {
  if (c == 1) return f;
  std::vector<ZPoly::TermT> out;
  out.reserve(f.size());
  for (auto& t : f.terms()) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
    out.push_back({t.m, q});
  }
  return ZPoly::from_sorted(std::move(out));
}

ZPoly positive_lead(const ZPoly& f) { return (!f.is_zero() && sgn(f.lead().c) < 0) ? -f : f; }

ZPoly primitive(const ZPoly& f) {
  if (f.is_zero()) return f;
  return positive_lead(div_scalar(f, integer_content(f)));
}

int first_var(const ZPoly& f, const ZPoly& g) {
  for (std::size_t v = 0; v < kMaxSymbols; ++v)
    if (f.depends_on(v) || g.depends_on(v)) return static_cast<int>(v);
  return -1;
}

Monomial var_power(std::size_t v, unsigned k) {
  Monomial m;
  m.set(v, k);
  return m;
}

// symmetric base-x digits of each coefficient become powers of v
ZPoly interpolate(const ZPoly& h, const mpz_class& x, std::size_t v) {
  std::vector<ZPoly::TermT> out;
  mpz_class half = x / 2, c, d;
  for (auto& t : h.terms()) {
    c = t.c;
    unsigned i = 0;
    while (c != 0) {
      mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      if (d > half) d -= x;
      if (d != 0) {
        Monomial m = t.m;
        m.set(v, i);
        out.push_back({m, d});
      }
      c -= d;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      ++i;
    }
  }
  return ZPoly::from_terms(std::move(out));
}

struct Heu {
  ZPoly h, cff, cfg;
};

// Heuristic GCD: evaluate the first live variable at a large integer, recurse,
// and lift back by symmetric base-x expansion. Correct whenever the final
// divisibility test passes.
std::optional<Heu> heu_gcd(const ZPoly& f0, const ZPoly& g0, int depth) {
  if (f0.is_constant() && g0.is_constant()) {
    mpz_class a = f0.constant_term(), b = g0.constant_term(), h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return Heu{ZPoly(h), ZPoly(mpz_class(a / h)), ZPoly(mpz_class(b / h))};
  }
  mpz_class c;
  {
    mpz_class cf = integer_content(f0), cg = integer_content(g0);
    mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  }
  ZPoly f = div_scalar(f0, c), g = div_scalar(g0, c);
  int v = first_var(f, g);

  mpz_class fn = abs_max_coeff(f), gn = abs_max_coeff(g);
  mpz_class B = 2 * (fn < gn ? fn : gn) + 29;
  mpz_class sq = sqrt(B);
  mpz_class x = B < 99 * sq ? B : mpz_class(99 * sq);
  mpz_class lf = fn / abs(f.lead().c), lg = gn / abs(g.lead().c);
  mpz_class alt = 2 * (lf < lg ? lf : lg) + 2;
  if (alt > x) x = alt;

  for (int attempt = 0; attempt < 6; ++attempt) {
    ZPoly ff = f.eval_var(v, x), gg = g.eval_var(v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto r = heu_gcd(ff, gg, depth + 1);
      if (!r) return std::nullopt;
      ZPoly h = primitive(interpolate(r->h, x, v));
      if (!h.is_zero()) {
        if (auto cff = f.divide_exact(h))
          if (auto cfg = g.divide_exact(h)) return Heu{h.scaled(c), *cff, *cfg};
      }
      ZPoly cff = interpolate(r->cff, x, v);
      if (!cff.is_zero()) {
        if (auto hh = f.divide_exact(cff))
          if (auto cfg = g.divide_exact(*hh)) return Heu{hh->scaled(c), cff, *cfg};
      }
      ZPoly cfg = interpolate(r->cfg, x, v);
      if (!cfg.is_zero()) {
        if (auto hh = g.divide_exact(cfg))
          if (auto cff2 = f.divide_exact(*hh)) return Heu{hh->scaled(c), *cff2, cfg};
      }
    }
    mpz_class r4 = sqrt(sqrt(x));
    x = 73794 * x * r4 / 27011;
  }
  return std::nullopt;
}

ZPoly from_coeffs(const std::vector<ZPoly>& cs, std::size_t v) {
  ZPoly r;
  for (std::size_t k = 0; k < cs.size(); ++k)
    if (!cs[k].is_zero()) r = r + cs[k].mul_term(var_power(v, static_cast<unsigned>(k)), mpz_class(1));
  return r;
}

std::vector<ZPoly> trim(std::vector<ZPoly> cs) {
  while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
  return cs;
}

ZPoly content_in(const std::vector<ZPoly>& cs) {
  ZPoly c;
  for (auto& x : cs) {
    if (x.is_zero()) continue;
    c = c.is_zero() ? positive_lead(x) : zgcd(c, x);
    if (c.is_constant() && c.constant_term() == 1) break;
  }
  return c;
}

// lc(b)^(deg a - deg b + 1) a mod b, dense in the main variable
std::vector<ZPoly> prem(std::vector<ZPoly> a, const std::vector<ZPoly>& b, std::size_t v) {
  std::size_t db = b.size() - 1;
  const ZPoly& lb = b.back();
  int e = static_cast<int>(a.size()) - static_cast<int>(db);
  while (!a.empty() && a.size() - 1 >= db) {
    ZPoly la = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (auto& x : a) x = x * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - b[i] * la;
    a = trim(std::move(a));
    --e;
  }
  (void)v;
  if (e > 0) {
    ZPoly m = lb.pow(static_cast<unsigned>(e));
    for (auto& x : a) x = x * m;
  }
  return a;
}

std::vector<ZPoly> divide_all(const std::vector<ZPoly>& cs, const ZPoly& d) {
  std::vector<ZPoly> out;
  out.reserve(cs.size());
  for (auto& x : cs) {
    auto q = x.divide_exact(d);
    if (!q) throw std::logic_error("content does not divide coefficient");
    out.push_back(*q);
  }
  return out;
}

// gcd of two polynomials that may each lack some variables
ZPoly reduce_by_missing_vars(const ZPoly& f, const ZPoly& g, bool& reduced) {
  reduced = false;
  for (std::size_t v = 0; v < kMaxSymbols; ++v) {
    bool inf = f.depends_on(v), ing = g.depends_on(v);
    if (inf == ing) continue;
    reduced = true;
    const ZPoly& with = inf ? f : g;
    ZPoly acc = positive_lead(inf ? g : f);
    for (auto& c : with.coefficients_in(v)) {
      if (c.is_zero()) continue;
      acc = zgcd(acc, c);
      if (acc.is_constant()) break;
    }
    return acc;
  }
  return {};
}

}  // namespace

mpz_class integer_content(const ZPoly& f) {
  mpz_class c = 0;
  for (auto& t : f.terms()) {
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.c.get_mpz_t());
    if (c == 1) break;
  }
  return c;
}

ZPoly to_primitive_z(const QPoly& q, mpq_class* scale) {
  if (q.is_zero()) {
    if (scale) *scale = 0;
    return {};
  }
  mpz_class l = 1;
  for (auto& t : q.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  std::vector<ZPoly::TermT> out;
  out.reserve(q.size());
  for (auto& t : q.terms()) {
    mpz_class v;
    mpz_divexact(v.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    out.push_back({t.m, v * t.c.get_num()});
  }
  ZPoly z = ZPoly::from_sorted(std::move(out));
  mpz_class c = integer_content(z);
  if (sgn(z.lead().c) < 0) c = -c;
  z = div_scalar(z, c);
  if (scale) {
    *scale = mpq_class(c, l);
    scale->canonicalize();
  }
  return z;
}

QPoly to_q(const ZPoly& z) {
  std::vector<QPoly::TermT> out;
  out.reserve(z.size());
  for (auto& t : z.terms()) out.push_back({t.m, mpq_class(t.c)});
  return QPoly::from_sorted(std::move(out));
}

ZPoly zgcd_prs(const ZPoly& f0, const ZPoly& g0) {
  if (f0.is_zero()) return positive_lead(g0);
  if (g0.is_zero()) return positive_lead(f0);
  int vi = first_var(f0, g0);
  if (vi < 0 || f0.is_constant() || g0.is_constant()) {
    mpz_class a = integer_content(f0), b = integer_content(g0), h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return ZPoly(h);
  }
  bool reduced;
  ZPoly r = reduce_by_missing_vars(f0, g0, reduced);
  if (reduced) return r;
  auto v = static_cast<std::size_t>(vi);
  auto a = trim(f0.coefficients_in(v)), b = trim(g0.coefficients_in(v));
  ZPoly ca = content_in(a), cb = content_in(b);
  ZPoly c = zgcd(ca, cb);
  a = divide_all(a, ca);
  b = divide_all(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (b.size() > 1) {
    auto rem = prem(a, b, v);
    if (rem.empty()) break;
    a = std::move(b);
    b = divide_all(rem, content_in(rem));
  }
  if (b.size() == 1) return positive_lead(c);
  ZPoly g = from_coeffs(b, v);
  return positive_lead(g * c);
}

ZPoly zgcd(const ZPoly& f0, const ZPoly& g0) {
  if (f0.is_zero()) return positive_lead(g0);
  if (g0.is_zero()) return positive_lead(f0);

  Monomial mf = f0.monomial_content(), mg = g0.monomial_content();
  Monomial m = Monomial::gcd(mf, mg);
  mpz_class cf = integer_content(f0), cg = integer_content(g0), c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  ZPoly unit(m, c);

  ZPoly f = *f0.divide_exact(ZPoly(mf, cf));
  ZPoly g = *g0.divide_exact(ZPoly(mg, cg));
  f = positive_lead(f);
  g = positive_lead(g);
  if (f.is_constant() || g.is_constant()) return unit;
  if (f == g) return f * unit;

  bool reduced;
  ZPoly r = reduce_by_missing_vars(f, g, reduced);
  if (reduced) return positive_lead(r * unit);

  // cheap containment test first; common when one side is a power of the other
  const ZPoly& small = f.size() <= g.size() ? f : g;
  const ZPoly& big = f.size() <= g.size() ? g : f;
  if (small.total_degree() <= big.total_degree() && big.divide_exact(small)) return small * unit;

  if (auto h = heu_gcd(f, g, 0)) return positive_lead(primitive(h->h) * unit);
  return positive_lead(zgcd_prs(f, g) * unit);
}

}  // namespace weylham::detail
