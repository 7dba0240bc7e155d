#include "weylham/maps.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "weylham/expr.hpp"

namespace weylham {

namespace {

RationalFunction zero_on(const AlphabetPtr& a) { return RationalFunction(Polynomial(a, BigRational(0))); }

// dphi/dtau + sum dphi/dx_j f_j
RationalFunction along(const RationalFunction& e, const std::vector<std::string>& vars,
                       const std::vector<RationalFunction>& flow, const std::string& time) {
  RationalFunction r = e.depends_on(time) ? e.derivative(time) : zero_on(e.alphabet());
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (e.depends_on(vars[j])) r = r + e.derivative(vars[j]) * flow[j];
  return r;
}

Fraction reduce_with(const Fraction& f, const PolyBindings& c) {
  if (c.empty()) return f;
  PolyBindings b;
  for (auto& [k, v] : c) b[k] = v.rebased(f.num.alphabet());
  return reduce(f, b);
}

RationalFunction reduce_with(const RationalFunction& f, const PolyBindings& c) {
  if (c.empty()) return f;
  Bindings b;
  for (auto& [k, v] : c) b[k] = RationalFunction(v.rebased(f.alphabet()));
  return f.substitute(b);
}

BirationalMap reduce_map(const BirationalMap& m, const PolyBindings& c) {
  if (c.empty()) return m;
  std::vector<RationalFunction> comps;
  for (auto& x : m.components()) comps.push_back(reduce_with(x, c));
  PolyBindings pm;
  for (auto& [k, v] : m.param_map()) {
    PolyBindings b;
    for (auto& [ck, cv] : c) b[ck] = cv.rebased(v.alphabet());
    pm[k] = v.substitute(b);
  }
  std::optional<std::vector<RationalFunction>> inv;
  if (m.inverse()) {
    inv.emplace();
    for (auto& x : *m.inverse()) inv->push_back(reduce_with(x, c));
  }
  return BirationalMap(m.vars_in(), m.vars_out(), std::move(comps), std::move(pm), std::move(inv))
      .rebased(m.alphabet());
}

std::vector<std::string> symbols_of(const std::vector<std::string>& exprs) {
  std::vector<std::string> out;
  for (auto& e : exprs)
    for (auto& s : expr_symbols(e))
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

}  // namespace

AlphabetPtr merged_alphabet(const std::vector<AlphabetPtr>& parts) {
  std::vector<std::string> names;
  for (auto& p : parts) {
    if (!p) continue;
    for (auto& n : p->names())
      if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  }
  return Alphabet::make(names);
}

BirationalMap::BirationalMap(std::vector<std::string> vars_in, std::vector<std::string> vars_out,
                             const std::vector<std::string>& components,
                             const std::map<std::string, std::string>& param_map,
                             const std::optional<std::vector<std::string>>& inverse,
                             const std::vector<std::string>& extra_symbols,
                             const std::vector<std::pair<std::string, std::string>>& auxiliaries)
    : in_(std::move(vars_in)), out_(std::move(vars_out)), aux_(auxiliaries) {
  if (components.size() != out_.size())
    throw std::invalid_argument("map has " + std::to_string(components.size()) + " components for " +
                                std::to_string(out_.size()) + " target variables");
  std::vector<std::string> names = in_;
  auto is_aux = [&](const std::string& n) {
    return std::any_of(aux_.begin(), aux_.end(), [&](const auto& a) { return a.first == n; });
  };
  auto add = [&](const std::string& n) {
    if (!is_aux(n) && std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  };
  for (auto& n : out_) add(n);
  for (auto& n : symbols_of(components)) add(n);
  for (auto& [k, v] : aux_)
    for (auto& n : expr_symbols(v)) add(n);
  for (auto& [k, v] : param_map) {
    add(k);
    for (auto& n : expr_symbols(v)) add(n);
  }
  if (inverse)
    for (auto& n : symbols_of(*inverse)) add(n);
  for (auto& n : extra_symbols) add(n);
  alpha_ = Alphabet::make(names);
  src_ = components;
  Bindings none;
  Bindings aux = aux_values(alpha_, none);
  for (auto& c : components) comps_.push_back(evaluate_expr(c, alpha_, aux));
  for (auto& [k, v] : param_map) pmap_[k] = parse_poly(v, alpha_);
  if (inverse) {
    if (inverse->size() != in_.size()) throw std::invalid_argument("inverse has wrong dimension");
    std::vector<RationalFunction> iv;
    for (auto& c : *inverse) iv.push_back(parse_expr(c, alpha_));
    inv_ = std::move(iv);
  }
}

BirationalMap::BirationalMap(std::vector<std::string> vars_in, std::vector<std::string> vars_out,
                             std::vector<RationalFunction> components, PolyBindings param_map,
                             std::optional<std::vector<RationalFunction>> inverse)
    : in_(std::move(vars_in)), out_(std::move(vars_out)) {
  if (components.size() != out_.size()) throw std::invalid_argument("map component count mismatch");
  std::vector<std::string> names = in_;
  auto add = [&](const std::string& n) {
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  };
  for (auto& n : out_) add(n);
  for (auto& c : components)
    for (auto& n : c.free_symbols()) add(n);
  for (auto& [k, v] : param_map) {
    add(k);
    for (auto& n : v.free_symbols()) add(n);
  }
  if (inverse)
    for (auto& c : *inverse)
      for (auto& n : c.free_symbols()) add(n);
  alpha_ = Alphabet::make(names);
  for (auto& c : components) comps_.push_back(c.rebased(alpha_));
  for (auto& [k, v] : param_map) pmap_[k] = v.rebased(alpha_);
  if (inverse) {
    std::vector<RationalFunction> iv;
    for (auto& c : *inverse) iv.push_back(c.rebased(alpha_));
    inv_ = std::move(iv);
  }
}

BirationalMap BirationalMap::identity(const std::vector<std::string>& vars, const AlphabetPtr& alphabet) {
  std::vector<RationalFunction> c;
  for (auto& v : vars) c.emplace_back(Polynomial::symbol(alphabet, v));
  return BirationalMap(vars, vars, c, {}, c);
}

BirationalMap BirationalMap::rebased(const AlphabetPtr& target) const {
  BirationalMap r = *this;
  r.alpha_ = target;
  for (auto& c : r.comps_) c = c.rebased(target);
  for (auto& [k, v] : r.pmap_) v = v.rebased(target);
  if (r.inv_)
    for (auto& c : *r.inv_) c = c.rebased(target);
  return r;
}

Bindings BirationalMap::as_bindings() const {
  Bindings b;
  for (std::size_t i = 0; i < out_.size() && i < in_.size(); ++i) b[in_[i]] = comps_[i];
  for (auto& [k, v] : pmap_) b[k] = RationalFunction(v);
  return b;
}

Bindings BirationalMap::inverse_bindings() const {
  if (!inv_) throw std::logic_error("map has no registered inverse");
  Bindings b;
  for (std::size_t i = 0; i < in_.size(); ++i) b[in_[i]] = (*inv_)[i];
  return b;
}

BirationalMap BirationalMap::with_inverse(std::vector<RationalFunction> inv) const {
  BirationalMap r = *this;
  r.inv_.emplace();
  for (auto& c : inv) r.inv_->push_back(c.rebased(alpha_));
  return r;
}

BirationalMap BirationalMap::inverted() const {
  if (!inv_) throw std::logic_error("map has no registered inverse");
  if (!pmap_.empty()) throw std::logic_error("cannot invert a map that moves parameters");
  return BirationalMap(out_, in_, *inv_, {}, comps_);
}

Bindings BirationalMap::aux_values(const AlphabetPtr& target, const Bindings& b) const {
  Bindings out = b;
  for (auto& [name, text] : aux_) out[name] = evaluate_expr(text, target, out);
  return out;
}

std::vector<RationalFunction> BirationalMap::evaluate(const AlphabetPtr& target, const Bindings& b) const {
  std::vector<RationalFunction> out;
  if (src_.empty()) {
    for (auto& c : comps_) out.push_back(c.rebased(target).substitute(b));
    return out;
  }
  Bindings all = aux_.empty() ? b : aux_values(target, b);
  for (auto& t : src_) out.push_back(evaluate_expr(t, target, all));
  return out;
}

BirationalMap compose(const BirationalMap& a0, const BirationalMap& b0) {
  if (a0.vars_in() != b0.vars_out()) throw std::invalid_argument("compose: b's targets must be a's sources");
  auto al = merged_alphabet({a0.alphabet(), b0.alphabet()});
  auto a = a0.rebased(al), b = b0.rebased(al);
  Bindings bb;
  for (std::size_t i = 0; i < b.vars_out().size(); ++i) bb[a.vars_in()[i]] = b.components()[i];
  for (auto& [k, v] : b.param_map()) bb[k] = RationalFunction(v);
  std::vector<RationalFunction> comps = a.evaluate(al, bb);
  PolyBindings pm, bp;
  for (auto& [k, v] : b.param_map()) bp[k] = v;
  std::set<std::string> params;
  for (auto& [k, v] : a.param_map()) params.insert(k);
  for (auto& [k, v] : b.param_map()) params.insert(k);
  for (auto& p : params) {
    auto it = a.param_map().find(p);
    Polynomial img = it != a.param_map().end() ? it->second : Polynomial::symbol(al, p);
    pm[p] = img.substitute(bp);
  }
  std::optional<std::vector<RationalFunction>> inv;
  if (a.inverse() && b.inverse() && a.param_map().empty() && b.param_map().empty()) {
    // (a b)^-1 = b^-1 a^-1
    Bindings ai;
    for (std::size_t i = 0; i < a.vars_in().size(); ++i) ai[b.vars_out()[i]] = (*a.inverse())[i];
    std::vector<RationalFunction> iv;
    for (auto& c : *b.inverse()) iv.push_back(c.substitute(ai));
    inv = std::move(iv);
  }
  return BirationalMap(b.vars_in(), a.vars_out(), std::move(comps), std::move(pm), std::move(inv));
}

ResidualList composition_identity_residual(const BirationalMap& a0, const BirationalMap& b0,
                                           const PolyBindings& constraints) {
  if (a0.vars_in() != b0.vars_out() || a0.vars_out().size() != b0.vars_in().size())
    throw std::invalid_argument("composition shape mismatch");
  std::vector<AlphabetPtr> parts{a0.alphabet(), b0.alphabet()};
  for (auto& [k, v] : constraints) parts.push_back(v.alphabet());
  auto al = merged_alphabet(parts);
  auto a = a0.rebased(al), b = reduce_map(b0.rebased(al), constraints);
  Bindings bb;
  for (auto& [k, v] : constraints) bb[k] = RationalFunction(v.rebased(al));
  for (std::size_t i = 0; i < b.vars_out().size(); ++i) bb[a.vars_in()[i]] = b.components()[i];
  for (auto& [k, v] : b.param_map()) bb[k] = RationalFunction(v);
  ResidualList out;
  auto ev = a.evaluate(al, bb);
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    RationalFunction v = ev[i] - RationalFunction(Polynomial::symbol(al, b.vars_in()[i]));
    out.push_back({a.vars_out()[i], reduce_with(Fraction::of(v), constraints)});
  }
  PolyBindings bp = b.param_map();
  std::set<std::string> params;
  for (auto& [k, v] : a.param_map()) params.insert(k);
  for (auto& [k, v] : b.param_map()) params.insert(k);
  for (auto& p : params) {
    auto it = a.param_map().find(p);
    Polynomial img = it != a.param_map().end() ? it->second : Polynomial::symbol(al, p);
    Polynomial d = img.substitute(bp) - Polynomial::symbol(al, p);
    out.push_back({"param " + p, reduce_with(Fraction{d, Polynomial(al, BigRational(1))}, constraints)});
  }
  return out;
}

ResidualList map_difference(const BirationalMap& m10, const BirationalMap& m20, const PolyBindings& constraints) {
  if (m10.vars_in() != m20.vars_in() || m10.vars_out() != m20.vars_out())
    throw std::invalid_argument("map_difference: variable lists differ");
  std::vector<AlphabetPtr> parts{m10.alphabet(), m20.alphabet()};
  for (auto& [k, v] : constraints) parts.push_back(v.alphabet());
  auto al = merged_alphabet(parts);
  auto m1 = reduce_map(m10.rebased(al), constraints), m2 = reduce_map(m20.rebased(al), constraints);
  ResidualList out;
  for (std::size_t i = 0; i < m1.components().size(); ++i)
    out.push_back({m1.vars_out()[i],
                   reduce_with(Fraction::of(m1.components()[i]) - Fraction::of(m2.components()[i]), constraints)});
  std::set<std::string> params;
  for (auto& [k, v] : m1.param_map()) params.insert(k);
  for (auto& [k, v] : m2.param_map()) params.insert(k);
  for (auto& p : params) {
    auto img = [&](const BirationalMap& m) {
      auto it = m.param_map().find(p);
      return it != m.param_map().end() ? it->second : Polynomial::symbol(al, p);
    };
    out.push_back({"param " + p,
                   reduce_with(Fraction{img(m1) - img(m2), Polynomial(al, BigRational(1))}, constraints)});
  }
  return out;
}

namespace {

Polynomial along_poly(const Polynomial& e, const std::vector<std::string>& vars, const std::vector<Polynomial>& flow,
                      const std::string& time) {
  Polynomial r = e.depends_on(time) ? e.derivative(time) : Polynomial(e.alphabet(), BigRational(0));
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (e.depends_on(vars[j])) r = r + e.derivative(vars[j]) * flow[j];
  return r;
}

Residual finish(std::string label, Polynomial num, const Polynomial& base, unsigned power, const TotalSystem& sys) {
  num = sys.reduce(num);
  if (num.is_zero()) return {std::move(label), Fraction{num, Polynomial(num.alphabet(), BigRational(1))}};
  return {std::move(label), Fraction{num, sys.reduce(base).pow(power)}};
}

}  // namespace

ResidualList is_symmetry(const BirationalMap& map0, const TotalSystem& sys0) {
  if (map0.vars_in() != sys0.variables() || map0.vars_out() != sys0.variables())
    throw std::invalid_argument("is_symmetry: map variables differ from the system's");
  auto al = merged_alphabet({sys0.alphabet(), map0.alphabet()});
  auto sys = sys0.rebased(al);
  auto map = reduce_map(map0.rebased(al), sys.constraints());
  Bindings B = map.as_bindings();
  BaseBindings base = over_common_base(B);
  const auto& vars = sys.variables();
  ResidualList out;
  for (auto& tau : sys.times()) {
    const auto& fl = sys.flow(tau);
    bool poly = std::all_of(fl.begin(), fl.end(), [](const RationalFunction& f) { return f.is_polynomial(); });
    if (!poly) {
      for (std::size_t i = 0; i < fl.size(); ++i) {
        RationalFunction lhs = along(map.components()[i], vars, fl, tau);
        Fraction r = Fraction::of(lhs) - substitute_lazy(fl[i], base);
        out.push_back({vars[i] + "/" + tau, sys.reduce(r)});
      }
      continue;
    }
    // phi_i = N_i / B^e_i, so d phi_i = (N_i' B - e_i N_i B') / B^(e_i + 1)
    std::vector<Polynomial> pf;
    for (auto& f : fl) pf.push_back(sys.reduce(f.as_polynomial()));
    Polynomial dB = along_poly(base.base, vars, pf, tau);
    for (std::size_t i = 0; i < fl.size(); ++i) {
      const auto& [N, e] = base.values.at(vars[i]);
      Polynomial lhs = along_poly(N, vars, pf, tau);
      unsigned lp = 0;
      if (e > 0) {
        lhs = lhs * base.base - (dB * N).scaled(BigRational(e));
        lp = e + 1;
      }
      auto rhs = substitute_over_base(pf[i], base);
      unsigned m = std::max(lp, rhs.power);
      Polynomial num = lhs * base.base.pow(m - lp) - rhs.num * base.base.pow(m - rhs.power);
      out.push_back(finish(vars[i] + "/" + tau, std::move(num), base.base, m, sys));
    }
  }
  return out;
}

WeylReport weyl_relations(const BirationalMap& s0, const BirationalMap& s1, const BirationalMap& pi,
                          const PolyBindings& constraints) {
  WeylReport r;
  r.s0_squared = composition_identity_residual(s0, s0, constraints);
  r.s1_squared = composition_identity_residual(s1, s1, constraints);
  r.pi_squared = composition_identity_residual(pi, pi, constraints);
  r.pi_s0_pi_vs_s1 = map_difference(compose(pi, compose(s0, pi)), s1, constraints);
  return r;
}

bool polynomial_in(const RationalFunction& f, const std::vector<std::string>& vars) {
  return std::none_of(vars.begin(), vars.end(), [&](const std::string& v) { return f.den().depends_on(v); });
}

std::vector<ChartComponent> chart_induced_flow(const BirationalMap& chart0, const TotalSystem& sys0) {
  if (!chart0.inverse()) throw std::logic_error("chart has no registered inverse");
  if (chart0.vars_in() != sys0.variables()) throw std::invalid_argument("chart source differs from system variables");
  auto al = merged_alphabet({sys0.alphabet(), chart0.alphabet()});
  auto chart = chart0.rebased(al);
  auto sys = sys0.rebased(al);
  Bindings inv = chart.inverse_bindings();
  std::vector<ChartComponent> out;
  for (auto& tau : sys.times()) {
    const auto& fl = sys.flow(tau);
    for (std::size_t i = 0; i < chart.components().size(); ++i) {
      RationalFunction d = along(chart.components()[i], sys.variables(), fl, tau);
      RationalFunction v = sys.reduce(d.substitute(inv));
      bool poly = polynomial_in(v, chart.vars_out());
      out.push_back({tau, chart.vars_out()[i], v, poly});
    }
  }
  return out;
}

bool all_polynomial(const std::vector<ChartComponent>& c) {
  return std::all_of(c.begin(), c.end(), [](const ChartComponent& x) { return x.polynomial; });
}

RationalFunction chart_image(const RationalFunction& h, const BirationalMap& chart0, const PolyBindings& constraints) {
  auto al = merged_alphabet({h.alphabet(), chart0.alphabet()});
  auto chart = chart0.rebased(al);
  return reduce_with(h.rebased(al).substitute(chart.inverse_bindings()), constraints);
}

RationalFunction jacobian_determinant(const BirationalMap& map) {
  std::size_t n = map.components().size();
  if (n != map.vars_in().size()) throw std::invalid_argument("jacobian of a non-square map");
  auto al = map.alphabet();
  std::vector<std::vector<RationalFunction>> M(n, std::vector<RationalFunction>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& c = map.components()[i];
      M[i][j] = c.depends_on(map.vars_in()[j]) ? c.derivative(map.vars_in()[j]) : zero_on(al);
    }
  RationalFunction det(Polynomial(al, BigRational(1)));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M[p][k].is_zero()) ++p;
    if (p == n) return zero_on(al);
    if (p != k) {
      std::swap(M[p], M[k]);
      det = -det;
    }
    det = det * M[k][k];
    RationalFunction inv = M[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M[i][k].is_zero()) continue;
      RationalFunction f = M[i][k] * inv;
      for (std::size_t j = k + 1; j < n; ++j)
        if (!M[k][j].is_zero()) M[i][j] = M[i][j] - f * M[k][j];
    }
  }
  return det;
}

PoissonSeries poisson_series_reflection(const Polynomial& f, const RationalFunction& alpha, const Polynomial& g,
                                        const std::vector<std::pair<std::string, std::string>>& pairs,
                                        int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  auto al = merged_alphabet({f.alphabet(), g.alphabet(), alpha.alphabet()});
  Polynomial F = f.rebased(al), b = g.rebased(al);
  RationalFunction ratio = alpha.rebased(al) / RationalFunction(F);
  RationalFunction value(b), rp(Polynomial(al, BigRational(1)));
  BigInt fact = 1;
  for (int k = 1; k <= max_depth; ++k) {
    b = poisson_bracket(F, b, pairs);
    if (b.is_zero()) return {value, k};
    fact *= k;
    rp = rp * ratio;
    value = value + rp * RationalFunction(b.scaled(BigRational(1) / BigRational(fact)));
  }
  throw std::runtime_error("Poisson series not terminated within depth " + std::to_string(max_depth));
}

namespace {

// coefficient of each chart-variable monomial (negative exponents allowed for
// the Laurent symbol) in a principal part, as a function of the parameters
using Key = std::vector<int>;

void collect(const RationalFunction& pp, const std::vector<std::string>& chart_vars, const std::string& sym,
             std::size_t column, std::size_t ncols, std::map<Key, std::vector<RationalFunction>>& rows) {
  if (pp.is_zero()) return;
  auto al = pp.alphabet();
  // den = sym^k * unit(params)
  unsigned k = pp.den().degree_in(sym);
  Polynomial unit = pp.den().coefficients_in(sym).at(k);
  std::vector<std::size_t> idx;
  for (auto& v : chart_vars) idx.push_back(al->index(v));
  std::size_t s = al->index(sym);
  std::map<Key, std::vector<detail::QPoly::TermT>> parts;
  for (auto& t : pp.num().terms()) {
    Key key(idx.size());
    Monomial rest = t.m;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      key[i] = t.m[idx[i]] - (idx[i] == s ? static_cast<int>(k) : 0);
      rest.set(idx[i], 0);
    }
    parts[key].push_back({rest, t.c});
  }
  for (auto& [key, terms] : parts) {
    auto& row = rows[key];
    if (row.empty()) row.assign(ncols, zero_on(al));
    row[column] = row[column] + RationalFunction(Polynomial(al, detail::QPoly::from_terms(terms)), unit);
  }
}

}  // namespace

namespace {

// coefficients of h in the given variables, keyed by their monomial
std::map<Key, RationalFunction> coefficient_vector(const Polynomial& h, const std::vector<std::string>& vars) {
  auto al = h.alphabet();
  std::vector<std::size_t> idx;
  for (auto& v : vars) idx.push_back(al->index(v));
  std::map<Key, std::vector<detail::QPoly::TermT>> parts;
  for (auto& t : h.terms()) {
    Key key(idx.size());
    Monomial rest = t.m;
    for (std::size_t i = 0; i < idx.size(); ++i) key[i] = t.m[idx[i]], rest.set(idx[i], 0);
    parts[key].push_back({rest, t.c});
  }
  std::map<Key, RationalFunction> out;
  for (auto& [k, v] : parts) out.emplace(k, RationalFunction(Polynomial(al, detail::QPoly::from_terms(v))));
  return out;
}

std::size_t rank_of(std::vector<std::vector<RationalFunction>> A) {
  if (A.empty()) return 0;
  std::size_t n = A[0].size(), r = 0;
  for (std::size_t col = 0; col < n && r < A.size(); ++col) {
    std::size_t p = r;
    while (p < A.size() && A[p][col].is_zero()) ++p;
    if (p == A.size()) continue;
    std::swap(A[p], A[r]);
    RationalFunction inv = A[r][col].inverse();
    for (std::size_t i = r + 1; i < A.size(); ++i) {
      if (A[i][col].is_zero()) continue;
      RationalFunction f = A[i][col] * inv;
      for (std::size_t j = col; j < n; ++j)
        if (!A[r][j].is_zero()) A[i][j] = A[i][j] - f * A[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

bool RecoveryResult::contains(const Polynomial& h) const {
  if (h.is_zero()) return true;
  if (basis.empty()) return false;
  std::vector<AlphabetPtr> parts{h.alphabet()};
  for (auto& b : basis) parts.push_back(b.alphabet());
  auto al = merged_alphabet(parts);
  std::vector<std::map<Key, RationalFunction>> vecs;
  std::set<Key> keys;
  for (auto& b : basis) vecs.push_back(coefficient_vector(b.rebased(al), variables));
  vecs.push_back(coefficient_vector(h.rebased(al), variables));
  for (auto& v : vecs)
    for (auto& [k, c] : v) keys.insert(k);
  std::vector<std::vector<RationalFunction>> A;
  for (auto& v : vecs) {
    std::vector<RationalFunction> row;
    for (auto& k : keys) {
      auto it = v.find(k);
      row.push_back(it == v.end() ? zero_on(al) : it->second);
    }
    A.push_back(std::move(row));
  }
  std::size_t full = rank_of(A);
  A.pop_back();
  return rank_of(A) == full;
}

RecoveryResult recover_hamiltonian(unsigned degree, const std::vector<std::pair<std::string, std::string>>& pairs,
                                   const std::vector<BirationalMap>& charts, const PolyBindings& constraints,
                                   const std::vector<std::string>& laurent_symbols) {
  if (laurent_symbols.size() != charts.size()) throw std::invalid_argument("one Laurent symbol per chart");
  std::vector<AlphabetPtr> parts;
  for (auto& c : charts) parts.push_back(c.alphabet());
  for (auto& [k, v] : constraints) parts.push_back(v.alphabet());
  std::vector<std::string> vars;
  for (auto& [q, p] : pairs) vars.push_back(q), vars.push_back(p);
  parts.push_back(Alphabet::make(vars));
  auto al = merged_alphabet(parts);

  // ansatz monomials, degree <= degree
  std::vector<Polynomial> mons;
  std::vector<unsigned> e(vars.size(), 0);
  std::function<void(std::size_t, unsigned)> gen = [&](std::size_t i, unsigned left) {
    if (i == vars.size()) {
      Polynomial m(al, BigRational(1));
      for (std::size_t j = 0; j < vars.size(); ++j) m = m * Polynomial::symbol(al, vars[j]).pow(e[j]);
      mons.push_back(m);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      gen(i + 1, left - k);
    }
    e[i] = 0;
  };
  gen(0, degree);
  std::sort(mons.begin(), mons.end(), [](const Polynomial& a, const Polynomial& b) {
    return compare(a.terms().front().m, b.terms().front().m) > 0;
  });

  std::map<Key, std::vector<RationalFunction>> rows;
  std::vector<std::map<Key, std::vector<RationalFunction>>> per_chart(charts.size());
  for (std::size_t c = 0; c < charts.size(); ++c) {
    auto chart = charts[c].rebased(al);
    Bindings inv = chart.inverse_bindings();
    for (std::size_t j = 0; j < mons.size(); ++j) {
      RationalFunction img = reduce_with(RationalFunction(mons[j]).substitute(inv), constraints);
      auto split = laurent_split(img, laurent_symbols[c]);
      collect(split.principal_part, chart.vars_out(), laurent_symbols[c], j, mons.size(), per_chart[c]);
    }
  }
  std::vector<std::vector<RationalFunction>> A;
  for (auto& pc : per_chart)
    for (auto& [k, row] : pc) A.push_back(row);

  RecoveryResult res;
  res.variables = vars;
  res.unknowns = mons.size();
  res.equations = A.size();
  // reduced row echelon form over the parameter field
  std::size_t n = mons.size(), r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < n && r < A.size(); ++col) {
    std::size_t p = r;
    while (p < A.size() && A[p][col].is_zero()) ++p;
    if (p == A.size()) continue;
    std::swap(A[p], A[r]);
    RationalFunction inv = A[r][col].inverse();
    for (auto& x : A[r]) x = x * inv;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (i == r || A[i][col].is_zero()) continue;
      RationalFunction f = A[i][col];
      for (std::size_t j = col; j < n; ++j)
        if (!A[r][j].is_zero()) A[i][j] = A[i][j] - f * A[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  res.rank = r;
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t fcol = 0; fcol < n; ++fcol) {
    if (is_pivot[fcol]) continue;
    RationalFunction h = RationalFunction(mons[fcol]);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (!A[i][fcol].is_zero()) h = h - A[i][fcol] * RationalFunction(mons[pivots[i]]);
    // clear parameter denominators so the basis element is a polynomial
    res.basis.push_back(h.num());
  }
  return res;
}

TotalSystem pushforward_system(const BirationalMap& map0, const TotalSystem& sys0,
                               const std::vector<TimeRescale>& rescale) {
  if (!map0.inverse()) throw std::logic_error("pushforward needs a registered inverse");
  if (map0.vars_in() != sys0.variables()) throw std::invalid_argument("map source differs from system variables");
  std::vector<AlphabetPtr> parts{sys0.alphabet(), map0.alphabet()};
  std::vector<std::string> extra;
  for (auto& r : rescale) extra.push_back(r.new_time);
  parts.push_back(Alphabet::make(extra));
  auto al = merged_alphabet(parts);
  auto map = map0.rebased(al);
  auto sys = sys0.rebased(al);
  Bindings inv = map.inverse_bindings();
  Bindings time_sub;
  for (auto& r : rescale)
    time_sub[r.old_time] = RationalFunction(Polynomial::symbol(al, r.new_time).scaled(r.factor));
  std::map<std::string, std::vector<RationalFunction>> flows;
  std::vector<std::string> times;
  for (auto& tau : sys.times()) {
    std::string name = tau;
    BigRational factor = 1;
    for (auto& r : rescale)
      if (r.old_time == tau) name = r.new_time, factor = r.factor;
    times.push_back(name);
    auto& out = flows[name];
    for (auto& c : map.components()) {
      RationalFunction v = sys.reduce(along(c, sys.variables(), sys.flow(tau), tau).substitute(inv));
      if (!time_sub.empty()) v = v.substitute(time_sub);
      out.push_back(v * RationalFunction(factor));
    }
  }
  return TotalSystem(map.vars_out(), times, std::move(flows), sys.constraints());
}

}  // namespace weylham
