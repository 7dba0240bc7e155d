#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "weylham/catalog.hpp"
#include "weylham/expr.hpp"
#include "weylham/numerics.hpp"

namespace weylham {

namespace {

using nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string summary;
};

using CheckFn = std::function<Outcome(const Catalog&, const json&)>;

// ---- small helpers -------------------------------------------------------

std::vector<std::string> strs(const json& j, const char* key) {
  std::vector<std::string> out;
  if (j.contains(key))
    for (auto& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

std::map<std::string, std::string> smap(const json& j, const char* key) {
  std::map<std::string, std::string> out;
  if (j.contains(key))
    for (auto& [k, v] : j.at(key).items()) out[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return out;
}

std::string str(const json& j, const char* key) { return j.at(key).get<std::string>(); }

double number(const json& v) {
  if (v.is_number()) return v.get<double>();
  auto s = v.get<std::string>();
  // decimals go straight to the nearest double; fractions through exact arithmetic
  if (s.find('/') == std::string::npos) {
    std::size_t used = 0;
    double d = std::stod(s, &used);
    if (used == s.size()) return d;
  }
  return to_double(parse_decimal_or_fraction(s));
}

std::vector<double> numbers(const json& v) {
  std::vector<double> out;
  for (auto& x : v) out.push_back(number(x));
  return out;
}

Values values_of(const json& j, const char* key) {
  Values out;
  if (j.contains(key))
    for (auto& [k, v] : j.at(key).items()) out[k] = number(v);
  return out;
}

AlphabetPtr with_texts(const AlphabetPtr& al, const std::vector<std::string>& texts) {
  std::vector<std::string> extra;
  for (auto& t : texts)
    for (auto& s : expr_symbols(t))
      if (std::find(extra.begin(), extra.end(), s) == extra.end()) extra.push_back(s);
  return al ? al->extended(extra) : Alphabet::make(extra);
}

PolyBindings rebase(const PolyBindings& c, const AlphabetPtr& al) {
  PolyBindings out;
  for (auto& [k, v] : c) out[k] = v.rebased(al);
  return out;
}

PolyBindings parse_bindings(const std::map<std::string, std::string>& m, const AlphabetPtr& al) {
  PolyBindings out;
  for (auto& [k, v] : m) out[k] = parse_poly(v, al);
  return out;
}

std::vector<std::string> texts_of(const std::map<std::string, std::string>& m) {
  std::vector<std::string> out;
  for (auto& [k, v] : m) out.push_back(k), out.push_back(v);
  return out;
}

RationalFunction apply_cons(const RationalFunction& f, const PolyBindings& c) {
  if (c.empty()) return f;
  Bindings b;
  for (auto& [k, v] : c)
    if (f.alphabet() && f.alphabet()->contains(k)) b[k] = RationalFunction(v.rebased(f.alphabet()));
  return b.empty() ? f : f.substitute(b);
}

Polynomial apply_cons(const Polynomial& f, const PolyBindings& c) {
  if (c.empty()) return f;
  PolyBindings b;
  for (auto& [k, v] : c)
    if (f.alphabet() && f.alphabet()->contains(k)) b[k] = v.rebased(f.alphabet());
  return b.empty() ? f : f.substitute(b);
}

std::string clip(std::string s, std::size_t n = 400) {
  if (s.size() > n) s = s.substr(0, n) + " ...";
  return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = "; ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::vector<std::string> nonzero_labels(const ResidualList& r) {
  std::vector<std::string> out;
  for (auto& x : r)
    if (!x.zero()) out.push_back(x.label);
  return out;
}

// system entry, optionally with its constraints removed or symbols specialized
TotalSystem substituted(const TotalSystem& s, const std::map<std::string, std::string>& subs) {
  if (subs.empty()) return s;
  auto al = with_texts(s.alphabet(), texts_of(subs));
  auto sys = s.rebased(al);
  Bindings b;
  for (auto& [k, v] : subs) b[k] = parse_expr(v, al);
  std::map<std::string, std::vector<RationalFunction>> flows;
  for (auto& tau : sys.times())
    for (auto& f : sys.flow(tau)) flows[tau].push_back(f.substitute(b));
  PolyBindings cons;
  for (auto& [k, v] : sys.constraints()) {
    if (subs.count(k)) continue;
    auto r = RationalFunction(v).substitute(b);
    cons[k] = r.as_polynomial();
  }
  return TotalSystem(sys.variables(), sys.times(), std::move(flows), std::move(cons));
}

TotalSystem system_arg(const Catalog& cat, const json& a, const char* key = "system") {
  TotalSystem s = cat.system(str(a, key));
  if (a.value("drop_constraints", false)) s = s.without_constraints();
  return substituted(s, smap(a, "substitute"));
}

BirationalMap resolve_map(const Catalog& cat, const json& ref) {
  if (ref.is_array()) {
    if (ref.empty()) throw std::invalid_argument("empty composition");
    BirationalMap m = resolve_map(cat, ref.back());
    for (std::size_t i = ref.size() - 1; i-- > 0;) m = compose(resolve_map(cat, ref[i]), m);
    return m;
  }
  auto s = ref.get<std::string>();
  if (s.rfind("inv:", 0) == 0) return cat.map(s.substr(4)).inverted();
  return cat.map(s);
}

std::vector<TimeRescale> rescale_of(const json& a) {
  std::vector<TimeRescale> out;
  if (a.contains("rescale"))
    for (auto& r : a.at("rescale"))
      out.push_back({str(r, "old"), str(r, "new"), parse_rational(r.at("factor").get<std::string>())});
  return out;
}

std::string component_diff(const RationalFunction& computed, const RationalFunction& printed) {
  if (computed.is_polynomial() && printed.is_polynomial()) {
    auto d = coefficient_differences(computed.as_polynomial(), printed.as_polynomial(), 8);
    return join(d, ", ");
  }
  return "computed " + clip(computed.to_string(), 200) + " vs printed " + clip(printed.to_string(), 200);
}

// a's flows against b's, per shared time and per b variable
struct FlowComparison {
  ResidualList residuals;
  std::vector<std::string> details;
};

FlowComparison compare_flows(const TotalSystem& a0, const TotalSystem& b0, const PolyBindings& extra0,
                             const std::vector<std::string>& only_times = {}) {
  std::vector<AlphabetPtr> parts{a0.alphabet(), b0.alphabet()};
  for (auto& [k, v] : extra0) parts.push_back(v.alphabet());
  auto al = merged_alphabet(parts);
  auto a = a0.rebased(al), b = b0.rebased(al);
  PolyBindings cons = rebase(a.constraints(), al);
  for (auto& [k, v] : rebase(b.constraints(), al)) cons.insert({k, v});
  for (auto& [k, v] : rebase(extra0, al)) cons[k] = v;
  FlowComparison out;
  for (auto& tau : b.times()) {
    if (!only_times.empty() && std::find(only_times.begin(), only_times.end(), tau) == only_times.end()) continue;
    if (!a.has_time(tau)) throw std::invalid_argument("no flow for time " + tau);
    for (std::size_t i = 0; i < b.variables().size(); ++i) {
      const auto& v = b.variables()[i];
      RationalFunction x = apply_cons(a.flow(tau)[a.index_of(v)], cons);
      RationalFunction y = apply_cons(b.flow(tau)[i], cons);
      Fraction d = Fraction::of(x) - Fraction::of(y);
      out.residuals.push_back({v + "/" + tau, d});
      if (!d.is_zero()) out.details.push_back(v + "/" + tau + ": " + clip(component_diff(x, y), 300));
    }
  }
  return out;
}

// expressions may name Hamiltonians as H_<time>
RationalFunction hamiltonian_expr(const std::string& text, const Catalog& cat, const json& a, AlphabetPtr al) {
  al = with_texts(al, {text});
  RationalFunction f = parse_expr(text, al);
  if (!a.contains("hamiltonian")) return f;
  const auto& spec = cat.hamiltonian(str(a, "hamiltonian"));
  std::vector<AlphabetPtr> parts{al};
  for (auto& [k, h] : spec.hamiltonians) parts.push_back(h.alphabet());
  auto m = merged_alphabet(parts);
  f = f.rebased(m);
  Bindings b;
  for (auto& [k, h] : spec.hamiltonians)
    if (m->contains("H_" + k)) b["H_" + k] = RationalFunction(h.rebased(m));
  return b.empty() ? f : f.substitute(b);
}

// ---- checks --------------------------------------------------------------

Outcome check_compatible(const Catalog& cat, const json& a) {
  TotalSystem s = system_arg(cat, a);
  auto times = a.contains("times") ? strs(a, "times") : s.times();
  if (times.size() != 2) throw std::invalid_argument("compatibility needs two times");
  auto r = compatibility_residual(s, times[0], times[1]);
  bool zero = all_zero(r);
  if (a.value("expect", "zero") == "nonzero") {
    auto bad = nonzero_labels(r);
    return {!zero, zero ? "unexpectedly compatible" : "incompatible as expected in: " + join(bad, ", ")};
  }
  return {zero, zero ? "all " + std::to_string(r.size()) + " residuals zero" : summarize(r)};
}

Outcome check_bracket(const Catalog& cat, const json& a) {
  const auto& spec = cat.hamiltonian(str(a, "hamiltonian"));
  const auto& sys = cat.system(str(a, "hamiltonian"));
  auto times = strs(a, "times");
  Polynomial b = poisson_bracket(spec.hamiltonians.at(times.at(0)), spec.hamiltonians.at(times.at(1)), spec.pairs);
  b = sys.reduce(b.rebased(sys.alphabet()));
  return {b.is_zero(), b.is_zero() ? "{H_" + times[0] + ", H_" + times[1] + "} = 0"
                                   : "bracket = " + clip(b.to_string())};
}

Outcome check_conserved(const Catalog& cat, const json& a) {
  std::vector<std::pair<std::string, std::string>> items;  // label, expression
  std::string sys_id = a.value("system", "");
  if (a.contains("integrals"))
    for (auto& id : strs(a, "integrals")) {
      const auto& e = cat.at(id);
      items.emplace_back(id, str(e.payload, "expression"));
      if (sys_id.empty()) sys_id = str(e.payload, "system");
    }
  for (auto& x : strs(a, "expressions")) items.emplace_back(x, x);
  if (a.contains("hamiltonian")) {
    const auto& spec = cat.hamiltonian(str(a, "hamiltonian"));
    if (sys_id.empty()) sys_id = str(a, "hamiltonian");
    for (auto& [k, h] : spec.hamiltonians) items.emplace_back("H_" + k, h.to_string());
  }
  json sa = a;
  sa["system"] = sys_id;
  TotalSystem s0 = system_arg(cat, sa);
  std::vector<std::string> texts;
  for (auto& [l, e] : items) texts.push_back(e);
  auto al = with_texts(s0.alphabet(), texts);
  TotalSystem s = s0.rebased(al);
  std::vector<std::string> bad;
  for (auto& [label, text] : items)
    for (auto& tau : s.times()) {
      auto d = total_derivative_along_flow(parse_expr(text, al), s, tau);
      if (!d.is_zero()) bad.push_back("d(" + label + ")/d" + tau + " = " + clip(d.to_string(), 200));
    }
  if (bad.empty())
    return {true, std::to_string(items.size()) + " quantities conserved along " + std::to_string(s.times().size()) +
                      " flows"};
  return {false, join(bad)};
}

Outcome check_symmetry(const Catalog& cat, const json& a) {
  auto m = resolve_map(cat, a.at("map"));
  TotalSystem s = system_arg(cat, a);
  auto r = is_symmetry(m, s);
  std::string sum = all_zero(r) ? "all " + std::to_string(r.size()) + " residuals zero" : summarize(r);
  // a printed form that is suspected to be misprinted is run too, but only reported
  if (a.contains("verbatim")) {
    auto v = is_symmetry(resolve_map(cat, a.at("verbatim")), s);
    sum += all_zero(v) ? "; printed form also passes"
                       : "; finding: printed form fails in " + join(nonzero_labels(v), ", ");
  }
  return {all_zero(r), sum};
}

PolyBindings constraints_for(const Catalog& cat, const json& a) {
  if (a.contains("system")) return cat.system(str(a, "system")).constraints();
  return {};
}

Outcome check_involution(const Catalog& cat, const json& a) {
  std::vector<std::string> bad, good;
  auto cons = constraints_for(cat, a);
  for (auto& id : strs(a, "maps")) {
    auto m = cat.map(id);
    auto r = composition_identity_residual(m, m, cons);
    (all_zero(r) ? good : bad).push_back(id + (all_zero(r) ? "" : ": " + summarize(r)));
  }
  if (bad.empty()) return {true, "involutions: " + join(good, ", ")};
  return {false, join(bad)};
}

Outcome check_weyl(const Catalog& cat, const json& a) {
  auto rep = weyl_relations(cat.map(str(a, "s0")), cat.map(str(a, "s1")), cat.map(str(a, "pi")),
                            constraints_for(cat, a));
  std::string s = rep.involutions() ? "s0^2 = s1^2 = pi^2 = id" : "involution fails";
  if (!all_zero(rep.s0_squared)) s += "; s0^2: " + summarize(rep.s0_squared);
  if (!all_zero(rep.s1_squared)) s += "; s1^2: " + summarize(rep.s1_squared);
  if (!all_zero(rep.pi_squared)) s += "; pi^2: " + summarize(rep.pi_squared);
  if (all_zero(rep.pi_s0_pi_vs_s1))
    s += "; finding: pi s0 pi = s1";
  else
    s += "; finding: pi s0 pi != s1 (differs in " + join(nonzero_labels(rep.pi_s0_pi_vs_s1), ", ") + ")";
  return {rep.involutions(), s};
}

Outcome check_composition_symmetry(const Catalog& cat, const json& a) {
  auto m = resolve_map(cat, a.at("maps"));
  TotalSystem s = system_arg(cat, a);
  auto r = is_symmetry(m, s);
  bool ok = all_zero(r);
  std::string sum = ok ? "composition is a symmetry" : "not a symmetry: " + summarize(r);
  if (a.contains("printed")) {
    auto d = map_difference(m, cat.map(str(a, "printed")), s.constraints());
    bool eq = all_zero(d);
    ok = ok && eq;
    sum += eq ? "; equals the printed form" : "; differs from the printed form: " + summarize(d);
  }
  return {ok, sum};
}

Outcome check_chart_flow(const Catalog& cat, const json& a) {
  auto c = chart_induced_flow(cat.map(str(a, "chart")), system_arg(cat, a));
  std::vector<std::string> bad;
  for (auto& x : c)
    if (!x.polynomial) bad.push_back(x.variable + "/" + x.time);
  bool expect = a.value("expect_polynomial", true);
  if (expect)
    return {bad.empty(), bad.empty() ? "all " + std::to_string(c.size()) + " components polynomial"
                                     : "poles in " + join(bad, ", ")};
  return {!bad.empty(), bad.empty() ? "unexpectedly polynomial" : "poles as expected in " + join(bad, ", ")};
}

Outcome check_jacobian(const Catalog& cat, const json& a) {
  auto m = resolve_map(cat, a.at("map"));
  auto d = jacobian_determinant(m);
  auto e = parse_expr(a.value("expect", "1"), with_texts(d.alphabet(), {a.value("expect", "1")}));
  bool ok = d.rebased(e.alphabet()) == e;
  return {ok, "det = " + clip(d.to_string())};
}

Outcome check_chart_hamiltonian(const Catalog& cat, const json& a) {
  PolyBindings cons = constraints_for(cat, a);
  auto run = [&](const json& items, std::vector<std::string>& bad, std::vector<std::string>& good) {
    for (auto& it : items) {
      const auto& chart = cat.map(str(it, "chart"));
      auto h = hamiltonian_expr(str(it, "expression"), cat, a, chart.alphabet());
      auto img = chart_image(h, chart, cons);
      bool poly = polynomial_in(img, chart.vars_out());
      (poly ? good : bad).push_back(str(it, "chart") + "(" + str(it, "expression") + ")");
    }
  };
  std::vector<std::string> bad, good;
  run(a.at("items"), bad, good);
  std::string s = bad.empty() ? "polynomial: " + join(good, ", ") : "not polynomial: " + join(bad, ", ");
  if (a.contains("literal_items")) {
    std::vector<std::string> lb, lg;
    run(a.at("literal_items"), lb, lg);
    s += "; literal reading: " + (lb.empty() ? std::string("all polynomial") : "not polynomial: " + join(lb, ", "));
  }
  return {bad.empty(), s};
}

Outcome check_poisson_series(const Catalog& cat, const json& a) {
  const auto& gen = cat.map(str(a, "generator"));
  const auto& spec = cat.hamiltonian(str(a, "hamiltonian"));
  PolyBindings cons = cat.system(str(a, "hamiltonian")).constraints();
  std::string ftxt = str(a, "f"), atxt = str(a, "alpha");
  auto al = with_texts(gen.alphabet(), {ftxt, atxt});
  Polynomial f = parse_poly(ftxt, al);
  RationalFunction alpha = parse_expr(atxt, al);
  int maxd = a.value("max_depth", 12);
  std::vector<std::string> bad;
  std::vector<int> depths;
  for (std::size_t i = 0; i < gen.vars_in().size(); ++i) {
    auto ser = poisson_series_reflection(f, alpha, Polynomial::symbol(al, gen.vars_in()[i]), spec.pairs, maxd);
    depths.push_back(ser.depth);
    auto m = merged_alphabet({ser.value.alphabet(), gen.alphabet()});
    Fraction d = Fraction::of(ser.value.rebased(m)) - Fraction::of(gen.components()[i].rebased(m));
    if (!cons.empty()) d = reduce(d, rebase(cons, m));
    if (!d.is_zero()) bad.push_back(gen.vars_out()[i]);
  }
  std::string ds;
  for (std::size_t i = 0; i < depths.size(); ++i)
    ds += (i ? "," : "") + gen.vars_in()[i] + ":" + std::to_string(depths[i]);
  if (bad.empty()) return {true, "series reproduces every component; depths " + ds};
  return {false, "series differs from the generator in " + join(bad, ", ") + "; depths " + ds};
}

Outcome check_recover(const Catalog& cat, const json& a) {
  const auto& spec = cat.hamiltonian(str(a, "hamiltonian"));
  const auto& sys = cat.system(str(a, "hamiltonian"));
  std::vector<BirationalMap> charts;
  for (auto& c : strs(a, "charts")) charts.push_back(cat.map(c));
  auto res = recover_hamiltonian(a.at("degree").get<unsigned>(), spec.pairs, charts, sys.constraints(),
                                 strs(a, "laurent"));
  std::vector<std::string> in, out;
  for (auto& t : strs(a, "contains")) {
    AlphabetPtr al = res.basis.empty() ? sys.alphabet() : res.basis.front().alphabet();
    auto h = hamiltonian_expr(t, cat, a, al).as_polynomial();
    // the basis is already reduced by the parameter constraints
    auto m = merged_alphabet({h.alphabet(), sys.alphabet()});
    h = sys.rebased(m).reduce(h.rebased(m));
    (res.contains(h) ? in : out).push_back(t);
  }
  std::ostringstream s;
  s << "family of dimension " << res.basis.size() << " (" << res.unknowns << " coefficients, " << res.equations
    << " conditions, rank " << res.rank << ")";
  if (!in.empty()) s << "; contains " << join(in, ", ");
  if (!out.empty()) s << "; missing " << join(out, ", ");
  return {out.empty(), s.str()};
}

Outcome check_pushforward(const Catalog& cat, const json& a) {
  auto m = resolve_map(cat, a.at("map"));
  TotalSystem src = system_arg(cat, a);
  TotalSystem pf = pushforward_system(m, src, rescale_of(a));
  bool ok = true;
  std::vector<std::string> parts;
  auto only = strs(a, "times");
  if (a.contains("expect")) {
    auto cmp = compare_flows(pf, cat.system(str(a, "expect")), {}, only);
    bool eq = all_zero(cmp.residuals);
    ok = ok && eq;
    parts.push_back(eq ? "matches " + str(a, "expect")
                       : "differs from " + str(a, "expect") + ": " + join(cmp.details));
  }
  for (auto& other : strs(a, "others")) {
    auto cmp = compare_flows(pf, cat.system(other), {}, only);
    parts.push_back(all_zero(cmp.residuals) ? "also matches " + other
                                            : "finding: " + other + " differs in " + join(cmp.details));
  }
  if (a.contains("printed")) {
    std::vector<std::string> bad;
    std::size_t n = 0;
    for (auto& [tau, comps] : a.at("printed").items())
      for (auto& [v, text] : comps.items()) {
        ++n;
        auto al = with_texts(pf.alphabet(), {text.get<std::string>()});
        auto x = apply_cons(pf.flow(tau)[pf.index_of(v)].rebased(al), rebase(pf.constraints(), al));
        auto y = apply_cons(parse_expr(text.get<std::string>(), al), rebase(pf.constraints(), al));
        if (x != y) bad.push_back(v + "/" + tau + ": " + clip(component_diff(x, y), 300));
      }
    ok = ok && bad.empty();
    parts.push_back(bad.empty() ? std::to_string(n) + " printed components reproduced"
                                : "printed components differ: " + join(bad));
  }
  if (a.value("polynomial", false)) {
    std::vector<std::string> bad;
    for (auto& tau : pf.times())
      for (std::size_t i = 0; i < pf.variables().size(); ++i)
        if (!polynomial_in(pf.flow(tau)[i], pf.variables())) bad.push_back(pf.variables()[i] + "/" + tau);
    ok = ok && bad.empty();
    parts.push_back(bad.empty() ? "all components polynomial" : "non-polynomial: " + join(bad, ", "));
  }
  return {ok, join(parts)};
}

Outcome check_identity_modulo(const Catalog& cat, const json& a) {
  auto m = resolve_map(cat, a.at("maps"));
  auto subs = smap(a, "substitute");
  auto cons = smap(a, "constraints");
  auto al = with_texts(m.alphabet(), texts_of(subs));
  al = with_texts(al, texts_of(cons));
  auto mm = m.rebased(al);
  Bindings b;
  for (auto& [k, v] : subs) b[k] = parse_expr(v, al);
  PolyBindings c = parse_bindings(cons, al);
  ResidualList r;
  for (std::size_t i = 0; i < mm.components().size(); ++i) {
    RationalFunction d = mm.components()[i] - RationalFunction(Polynomial::symbol(al, mm.vars_in()[i]));
    d = apply_cons(d.substitute(b), c);
    r.push_back({mm.vars_out()[i], Fraction::of(d)});
  }
  bool ok = all_zero(r);
  return {ok, ok ? "composition is the identity modulo the stated relations" : summarize(r)};
}

Outcome check_map_equal(const Catalog& cat, const json& a) {
  auto m1 = resolve_map(cat, a.at("a"));
  auto m2 = resolve_map(cat, a.at("b"));
  PolyBindings cons;
  if (a.contains("system")) cons = cat.system(str(a, "system")).constraints();
  auto d = map_difference(m1, m2, cons);
  bool eq = all_zero(d);
  std::string s = eq ? "maps agree" : "maps differ in " + join(nonzero_labels(d), ", ") + ": " + summarize(d);
  for (auto& other : strs(a, "others")) {
    auto d2 = map_difference(m1, resolve_map(cat, other), cons);
    s += all_zero(d2) ? "; also equals " + other
                      : "; finding: " + other + " differs in " + join(nonzero_labels(d2), ", ");
  }
  bool expect = a.value("expect_equal", true);
  return {eq == expect, s};
}

Outcome check_map_component(const Catalog& cat, const json& a) {
  auto m = resolve_map(cat, a.at("map"));
  auto v = str(a, "variable");
  auto it = std::find(m.vars_out().begin(), m.vars_out().end(), v);
  if (it == m.vars_out().end()) throw std::invalid_argument("map has no component " + v);
  auto al = with_texts(m.alphabet(), {str(a, "expression")});
  auto c = m.components()[static_cast<std::size_t>(it - m.vars_out().begin())].rebased(al);
  auto e = parse_expr(str(a, "expression"), al);
  return {c == e, v + " = " + c.to_string()};
}

MatrixPencil pencil_arg(const Catalog& cat, const json& a, const char* key) {
  MatrixPencil P = cat.pencil(str(a, key));
  auto subs = smap(a, "substitute");
  if (subs.empty()) return P;
  auto al = with_texts(P.alphabet(), texts_of(subs));
  P = P.rebased(al);
  PolyBindings b = parse_bindings(subs, al);
  return P.map([&](const Polynomial& p) { return p.substitute(b); });
}

Outcome check_zero_curvature(const Catalog& cat, const json& a) {
  auto A = pencil_arg(cat, a, "A"), B = pencil_arg(cat, a, "B");
  auto r = zero_curvature_residual(A, B, system_arg(cat, a), str(a, "time"),
                                   parse_rational(a.value("delta", "1")));
  return {r.is_zero(), r.is_zero() ? "residual pencil is zero" : "residual " + clip(r.to_string())};
}

Outcome check_extract_flow(const Catalog& cat, const json& a) {
  auto A = pencil_arg(cat, a, "A"), B = pencil_arg(cat, a, "B");
  TotalSystem expect = substituted(cat.system(str(a, "expect")), smap(a, "expect_substitute"));
  auto tau = str(a, "time");
  auto flow = extract_flow(A, B, expect.variables(), parse_rational(a.value("delta", "1")));
  // a pencil off by a constant factor gives the flow at a different speed
  if (a.contains("scale")) {
    RationalFunction k(parse_rational(str(a, "scale")));
    for (auto& f : flow) f = f * k;
  }
  std::map<std::string, std::vector<RationalFunction>> fl{{tau, flow}};
  TotalSystem got(expect.variables(), {tau}, std::move(fl), PolyBindings{});
  auto cmp = compare_flows(got, expect, {}, {tau});
  bool ok = all_zero(cmp.residuals);
  return {ok, ok ? "extracted flow equals " + str(a, "expect") : join(cmp.details)};
}

Outcome check_determinant(const Catalog& cat, const json& a) {
  const auto& A = cat.pencil(str(a, "pencil"));
  Polynomial d = A.determinant();
  auto al = with_texts(d.alphabet(), {str(a, "printed")});
  auto printed = parse_poly(str(a, "printed"), al);
  auto diffs = coefficient_differences(d.rebased(al), printed);
  if (diffs.empty()) return {true, "det(A) matches term by term (" + std::to_string(d.num_terms()) + " terms)"};
  return {false, join(diffs)};
}

Bindings map_bindings(const BirationalMap& m) {
  Bindings b;
  for (std::size_t i = 0; i < m.vars_out().size(); ++i) b[m.vars_out()[i]] = m.components()[i];
  return b;
}

// invariant expressed through a relation map (phase variables -> new coordinates)
RationalFunction through(const Polynomial& p, const BirationalMap& m, const PolyBindings& cons) {
  auto al = merged_alphabet({p.alphabet(), m.alphabet()});
  for (auto& [k, v] : cons) al = merged_alphabet({al, v.alphabet()});
  Bindings b;
  for (auto& [k, v] : map_bindings(m)) b[k] = v.rebased(al);
  return apply_cons(RationalFunction(p.rebased(al)).substitute(b), rebase(cons, al));
}

Outcome check_invariants(const Catalog& cat, const json& a) {
  auto A = pencil_arg(cat, a, "pencil");
  auto inv = det_expansion(A);
  auto m = resolve_map(cat, a.at("map"));
  PolyBindings cons;
  if (a.contains("system")) cons = cat.system(str(a, "system")).constraints();
  std::vector<std::string> bad, good;
  for (auto& [name, text] : a.at("names").items()) {
    const Polynomial& K = inv[name];
    auto al = with_texts(K.alphabet(), {text.get<std::string>()});
    if (K.rebased(al) != parse_poly(text.get<std::string>(), al)) bad.push_back(name + " is not " + text.get<std::string>());
  }
  for (auto& [name, val] : a.at("expect").items()) {
    auto img = through(inv[name], m, cons);
    auto al = with_texts(img.alphabet(), {val.get<std::string>()});
    auto want = parse_expr(val.get<std::string>(), al);
    if (img.rebased(al) != want)
      bad.push_back(name + " -> " + clip(img.to_string(), 200) + " (expected " + val.get<std::string>() + ")");
    else
      good.push_back(name + " -> " + val.get<std::string>());
  }
  return {bad.empty(), bad.empty() ? join(good, ", ") : join(bad)};
}

Outcome check_invariants_affine(const Catalog& cat, const json& a) {
  auto A = pencil_arg(cat, a, "pencil");
  auto inv = det_expansion(A);
  auto m = resolve_map(cat, a.at("map"));
  const auto& spec = cat.hamiltonian(str(a, "hamiltonian"));
  const auto& hs = cat.system(str(a, "hamiltonian"));
  PolyBindings cons = hs.constraints();
  std::vector<std::string> vars = m.vars_in();
  auto match = [&](const json& pairs, std::vector<std::string>& out) {
    bool all = true;
    for (auto& pr : pairs) {
      auto name = pr.at(0).get<std::string>(), tau = pr.at(1).get<std::string>();
      auto img = through(inv[name], m, cons);
      auto H = apply_cons(spec.hamiltonians.at(tau), rebase(cons, spec.hamiltonians.at(tau).alphabet()));
      auto am = img.is_polynomial() ? affine_match(img.as_polynomial(), H, vars) : std::nullopt;
      if (am)
        out.push_back(name + " = " + to_fraction_string(am->scale) + "*H_" + tau + " + (" + am->constant.to_string() +
                      ")");
      else
        out.push_back(name + " not affine in H_" + tau), all = false;
    }
    return all;
  };
  std::vector<std::string> got;
  bool ok = match(a.at("pairs"), got);
  std::string s = join(got, ", ");
  if (a.contains("literal_pairs")) {
    std::vector<std::string> lit;
    bool lok = match(a.at("literal_pairs"), lit);
    s += lok ? "; literal pairing also matches" : "; finding: literal pairing fails (" + join(lit, ", ") + ")";
  }
  return {ok, s};
}

Outcome check_det_conserved(const Catalog& cat, const json& a) {
  auto A = pencil_arg(cat, a, "pencil");
  TotalSystem s = system_arg(cat, a);
  auto inv = det_expansion(A);
  auto al = merged_alphabet({s.alphabet(), A.alphabet()});
  auto sys = s.rebased(al);
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < inv.coefficients.size(); ++k)
    for (auto& tau : sys.times())
      if (!total_derivative_along_flow(RationalFunction(inv.coefficients[k].rebased(al)), sys, tau).is_zero())
        bad.push_back("T^" + std::to_string(k) + "/" + tau);
  return {bad.empty(), bad.empty() ? "every coefficient of det(A) is conserved along every flow"
                                   : "not conserved: " + join(bad, ", ")};
}

Outcome check_surface(const Catalog& cat, const json& a) {
  auto ksyms = smap(a, "integral_values");  // K1 -> "t"
  std::vector<std::string> texts{str(a, "f1"), str(a, "f2")};
  auto al = with_texts(nullptr, texts);
  Polynomial f1 = parse_poly(texts[0], al), f2 = parse_poly(texts[1], al);
  auto kept = strs(a, "kept");
  auto surf = surface_from_integrals(f1, f2, str(a, "eliminate"), kept);
  std::vector<std::string> parts;
  unsigned want = a.value("degree", 0u);
  bool ok = surf.degree == want;
  parts.push_back("deg F = " + std::to_string(surf.degree));

  const auto& spec = cat.hamiltonian(str(a, "hamiltonian"));
  TotalSystem sys = cat.system(str(a, "hamiltonian"));
  auto m = merged_alphabet({surf.F.alphabet(), sys.alphabet()});
  sys = sys.rebased(m);
  Polynomial F = surf.F.rebased(m);
  PolyBindings onlevel;
  for (auto& [k, tau] : ksyms) onlevel[k] = spec.hamiltonians.at(tau).rebased(m);
  auto level = [&](const RationalFunction& x) { return apply_cons(apply_cons(x, onlevel), sys.constraints()); };
  bool vanishes = level(RationalFunction(F)).is_zero();
  ok = ok && vanishes;
  parts.push_back(vanishes ? "F = 0 on the level set" : "F does not vanish on the level set");
  for (auto& tau : sys.times()) {
    bool z = level(total_derivative_along_flow(RationalFunction(F), sys, tau)).is_zero();
    ok = ok && z;
    parts.push_back(std::string("dF/d") + tau + (z ? " = 0" : " != 0") + " on the level set");
  }
  if (a.contains("printed")) {
    auto pal = with_texts(F.alphabet(), {str(a, "printed")});
    auto printed = parse_poly(str(a, "printed"), pal);
    auto c = proportional(printed, F.rebased(pal));
    if (c)
      parts.push_back("finding: printed F = " + to_fraction_string(*c) + " * resultant");
    else
      parts.push_back("finding: printed F is not proportional to the resultant; " +
                      join(coefficient_differences(F.rebased(pal), printed, 10), ", "));
  }
  return {ok, join(parts)};
}

std::vector<std::pair<std::string, ScalarODE>> reduce_jets(const Catalog& cat, const json& a) {
  TotalSystem s = system_arg(cat, a);
  if (a.contains("via")) s = pushforward_system(resolve_map(cat, a.at("via")), s, rescale_of(a));
  std::map<std::string, std::string> ident;
  for (auto& [k, v] : a.at("identifications").items()) ident[k] = v.get<std::string>();
  auto r = jet_reduce(s, ident, strs(a, "unknowns"));
  return {r.begin(), r.end()};
}

Outcome check_jet_reduce(const Catalog& cat, const json& a) {
  auto got = reduce_jets(cat, a);
  std::vector<std::string> found, missing;
  for (auto& id : strs(a, "expect")) {
    const auto& want = cat.relation(id);
    bool hit = std::any_of(got.begin(), got.end(), [&](auto& kv) { return same_relation(kv.second, want); });
    (hit ? found : missing).push_back(id);
  }
  for (auto& id : strs(a, "reject")) {
    const auto& bad = cat.relation(id);
    if (std::any_of(got.begin(), got.end(), [&](auto& kv) { return same_relation(kv.second, bad); }))
      missing.push_back("unexpected " + id);
  }
  std::string s = "tower verified; " + std::to_string(got.size()) + " relations";
  if (!found.empty()) s += "; reproduces " + join(found, ", ");
  if (!missing.empty()) s += "; not reproduced: " + join(missing, ", ");
  return {missing.empty(), s};
}

Outcome check_tower_fails(const Catalog& cat, const json& a) {
  try {
    reduce_jets(cat, a);
  } catch (const std::runtime_error& e) {
    return {true, std::string("tower rejected as expected: ") + e.what()};
  }
  return {false, "tower unexpectedly holds"};
}

Outcome check_combine(const Catalog& cat, const json& a) {
  std::vector<ScalarODE> odes;
  for (auto& id : strs(a, "relations")) odes.push_back(cat.relation(id));
  std::vector<CombineStep> recipe;
  for (auto& r : a.at("recipe"))
    recipe.push_back({r.at("index").get<std::size_t>(), r.value("coefficient", "1"), r.value("differentiate", "")});
  auto c = combine_flows(odes, recipe);
  if (a.value("expect_trivial", false)) return {c.relation.is_zero(), "combination = " + clip(c.relation.to_string())};
  bool ok = same_relation(c, cat.relation(str(a, "expect")));
  return {ok, ok ? "combination reproduces " + str(a, "expect")
                 : "combination " + clip(c.relation.to_string()) + " differs from " + str(a, "expect")};
}

Outcome check_traveling_wave(const Catalog& cat, const json& a) {
  auto r = traveling_wave_reduce(cat.relation(str(a, "relation")), str(a, "speed"), a.value("new_independent", "T"),
                                 a.value("new_unknown", "U"));
  bool ok = same_relation(r, cat.relation(str(a, "expect")));
  return {ok, ok ? "reduction reproduces " + str(a, "expect") : "reduced form " + clip(r.relation.to_string())};
}

Outcome check_homogeneity(const Catalog& cat, const json& a) {
  const auto& ode = cat.relation(str(a, "relation"));
  std::map<std::string, BigRational> w;
  for (auto& [k, v] : a.at("weights").items()) w[k] = parse_rational(v.get<std::string>());
  auto rep = homogeneity_check(ode, w);
  BigRational eff = rep.weight;
  if (!ode.cleared_factor.is_constant()) {
    ScalarODE f = ode;
    f.relation = ode.cleared_factor;
    auto fr = homogeneity_check(f, w);
    if (!fr.homogeneous) throw std::runtime_error("cleared factor is not homogeneous");
    eff -= fr.weight;
  }
  bool expect_h = a.value("expect_homogeneous", true);
  std::string s = rep.homogeneous ? "homogeneous of weight " + to_fraction_string(eff)
                                  : "not homogeneous; off-weight terms: " + clip(join(rep.offending, ", "), 300);
  if (!expect_h) return {!rep.homogeneous, s};
  bool ok = rep.homogeneous;
  if (a.contains("expect_weight")) ok = ok && eff == parse_rational(a.at("expect_weight").get<std::string>());
  return {ok, s};
}

Outcome check_specialize(const Catalog& cat, const json& a) {
  std::map<std::string, std::string> v;
  for (auto& [k, x] : a.at("values").items()) v[k] = x.get<std::string>();
  auto r = specialize(cat.relation(str(a, "relation")), v);
  bool ok = same_relation(r, cat.relation(str(a, "expect")));
  return {ok, ok ? "specialization reproduces " + str(a, "expect") : "specialized " + clip(r.relation.to_string())};
}

Outcome check_relation_equal(const Catalog& cat, const json& a) {
  bool ok = same_relation(cat.relation(str(a, "a")), cat.relation(str(a, "b")));
  return {ok, ok ? "relations agree" : "relations differ"};
}

Polynomial reduce_modulo(Polynomial p, const Polynomial& m, const std::string& r) {
  auto al = p.alphabet();
  Polynomial mm = m.rebased(al);
  unsigned n = mm.degree_in(r);
  BigRational lead = mm.coefficients_in(r).back().constant_value();
  Polynomial x = Polynomial::symbol(al, r);
  while (!p.is_zero() && p.degree_in(r) >= n) {
    unsigned d = p.degree_in(r);
    Polynomial c = p.coefficients_in(r).back();
    p = p - (c * x.pow(d - n) * mm).scaled(1 / lead);
  }
  return p;
}

Outcome check_solution(const Catalog& cat, const json& a) {
  const auto& sol = cat.at(str(a, "solution")).payload;
  TotalSystem s = cat.system(str(sol, "system"));
  auto asg = smap(sol, "assignment");
  auto prm = smap(sol, "params");
  auto alg = smap(sol, "algebraic");
  auto al = with_texts(s.alphabet(), texts_of(asg));
  al = with_texts(al, texts_of(prm));
  al = with_texts(al, texts_of(alg));
  s = s.rebased(al);
  Bindings A, P;
  for (auto& [k, v] : asg) A[k] = parse_expr(v, al);
  for (auto& [k, v] : prm) P[k] = parse_expr(v, al);
  auto r = weylham::check_solution(s, A, P);
  for (auto& [sym, minpoly] : alg) {
    auto mp = parse_poly(minpoly, al);
    for (auto& x : r) x.value.num = reduce_modulo(x.value.num, mp, sym);
  }
  bool ok = all_zero(r);
  return {ok, ok ? "exact solution: all " + std::to_string(r.size()) + " residuals zero" : summarize(r)};
}

Outcome check_fixed_solution(const Catalog& cat, const json& a) {
  auto m = resolve_map(cat, a.at("map"));
  const auto& sol = cat.at(str(a, "solution")).payload;
  auto asg = smap(sol, "assignment");
  auto prm = smap(sol, "params");
  auto al = with_texts(m.alphabet(), texts_of(asg));
  al = with_texts(al, texts_of(prm));
  auto mm = m.rebased(al);
  Bindings b;
  for (auto& [k, v] : asg) b[k] = parse_expr(v, al);
  for (auto& [k, v] : prm) b[k] = parse_expr(v, al);
  std::vector<std::string> bad;
  auto img = mm.evaluate(al, b);
  for (std::size_t i = 0; i < img.size(); ++i)
    if (img[i] != b.at(mm.vars_in()[i])) bad.push_back(mm.vars_out()[i]);
  for (auto& [p, v] : mm.param_map())
    if (RationalFunction(v).substitute(b) != b.at(p)) bad.push_back("param " + p);
  return {bad.empty(), bad.empty() ? "solution is fixed by the map" : "moved components: " + join(bad, ", ")};
}

Outcome check_numeric_solution(const Catalog& cat, const json& a) {
  const auto& sol = cat.at(str(a, "solution")).payload;
  if (sol.value("closed_form", "") != "tanh_kink") throw std::invalid_argument("unknown closed form");
  CompiledSystem cs(cat.system(str(sol, "system")), values_of(sol, "params"));
  double c = number(sol.at("c"));
  const double r2 = std::sqrt(2.0);
  auto times = cs.system().times();
  Solution u = [&](const Values& tv) {
    double arg = c;
    for (auto& t : times) arg += tv.at(t);
    return std::vector<double>{-std::tanh(arg / r2) / r2, 0.0};
  };
  SolutionDerivative du = [&](const std::string&, const Values& tv) {
    double arg = c;
    for (auto& t : times) arg += tv.at(t);
    double sech = 1.0 / std::cosh(arg / r2);
    return std::vector<double>{-0.5 * sech * sech, 0.0};
  };
  auto g = a.at("grid");
  auto grid = product_grid(times, number(g.at(0)), number(g.at(1)), g.at(2).get<std::size_t>());
  double res = residual_on_grid(cs, u, du, grid);
  double thr = number(a.at("threshold"));
  return {res <= thr, "max residual " + format_double(res) + " over " + std::to_string(grid.size()) +
                          " points (threshold " + format_double(thr) + ")"};
}

Outcome check_stationary_profile(const Catalog& cat, const json& a) {
  CompiledSystem cs(cat.system(str(a, "system")), values_of(a, "params"));
  auto span = numbers(a.at("span"));
  double h = number(a.at("h"));
  auto n = static_cast<std::size_t>(std::llround((span[1] - span[0]) / h));
  IntegrateOptions opt;
  opt.tol = number(a.at("tol"));
  for (std::size_t i = 0; i <= n; ++i) opt.output.push_back(span[0] + static_cast<double>(i) * h);
  opt.output.back() = span[1];
  auto tr = integrate_flow(cs, str(a, "time"), numbers(a.at("init")), span[0], span[1], opt);
  std::size_t col = cs.system().index_of(str(a, "profile"));
  std::vector<double> samples;
  for (auto& st : tr.states) samples.push_back(st[col]);

  const auto& ode = cat.relation(str(a, "relation"));
  if (ode.unknowns.size() != 1) throw std::invalid_argument("profile check needs one unknown");
  auto al = ode.relation.alphabet();
  unsigned order = ode.highest_order();
  auto jets = finite_difference_jets(samples, h, order);
  // each jet u_<letters> of total order k is phi^(k) (unit speeds)
  std::vector<int> slot_order(al->size(), -1);
  for (std::size_t i = 0; i < al->size(); ++i)
    if (auto j = parse_jet(al->name(i), ode.unknowns, ode.independents)) {
      unsigned k = 0;
      for (auto o : j->order) k += o;
      slot_order[i] = static_cast<int>(k);
    }
  Values pv = values_of(a, "params");
  std::vector<double> slots(al->size(), 0.0);
  for (std::size_t i = 0; i < al->size(); ++i)
    if (slot_order[i] < 0) {
      auto it = pv.find(al->name(i));
      if (it == pv.end()) throw std::invalid_argument("no value for " + al->name(i));
      slots[i] = it->second;
    }
  CompiledExpr e{RationalFunction(ode.relation)};
  double worst = 0;
  for (auto& row : jets) {
    for (std::size_t i = 0; i < al->size(); ++i)
      if (slot_order[i] >= 0) slots[i] = row[static_cast<std::size_t>(slot_order[i])];
    worst = std::max(worst, std::abs(e(slots)));
  }
  double thr = number(a.at("threshold"));
  return {worst <= thr, "max residual " + format_double(worst) + " at " + std::to_string(jets.size()) +
                            " samples (threshold " + format_double(thr) + ")"};
}

Outcome check_drift(const Catalog& cat, const json& a) {
  TotalSystem s = cat.system(str(a, "system"));
  CompiledSystem cs(s, values_of(a, "params"));
  auto span = numbers(a.at("span"));
  IntegrateOptions opt;
  opt.tol = number(a.at("tol"));
  auto tr = integrate_flow(cs, str(a, "time"), numbers(a.at("init")), span[0], span[1], opt);
  std::vector<std::pair<std::string, RationalFunction>> qs;
  if (a.contains("hamiltonian"))
    for (auto& [k, h] : cat.hamiltonian(str(a, "hamiltonian")).hamiltonians)
      qs.emplace_back("H_" + k, RationalFunction(h.rebased(s.alphabet())));
  double thr = number(a.at("threshold"));
  bool ok = true;
  std::vector<std::string> parts;
  for (auto& [name, q] : qs) {
    auto d = drift(cs, tr, name, q);
    ok = ok && d.max_rel <= thr;
    parts.push_back(name + " rel drift " + format_double(d.max_rel));
  }
  return {ok, join(parts, ", ") + " (threshold " + format_double(thr) + ", " + std::to_string(tr.grid.size()) +
                  " steps)"};
}

Outcome check_path_independence(const Catalog& cat, const json& a) {
  CompiledSystem cs(cat.system(str(a, "system")), values_of(a, "params"));
  auto times = cs.system().times();
  auto len = numbers(a.at("lengths"));
  double d = path_independence(cs, times.at(0), times.at(1), numbers(a.at("init")), len.at(0), len.at(1),
                               number(a.at("tol")));
  double thr = number(a.at("threshold"));
  return {d <= thr, "endpoint discrepancy " + format_double(d) + " (threshold " + format_double(thr) + ")"};
}

Outcome check_fixed_point(const Catalog& cat, const json& a) {
  CompiledSystem cs(cat.system(str(a, "system")), values_of(a, "params"));
  auto span = numbers(a.at("span"));
  auto init = numbers(a.at("init"));
  IntegrateOptions opt;
  opt.tol = number(a.at("tol"));
  double worst = 0;
  for (auto& tau : cs.system().times()) {
    auto tr = integrate_flow(cs, tau, init, span[0], span[1], opt);
    for (auto& st : tr.states)
      for (std::size_t i = 0; i < st.size(); ++i) worst = std::max(worst, std::abs(st[i] - init[i]));
  }
  double thr = 10 * opt.tol;
  return {worst <= thr, "max deviation " + format_double(worst) + " (bound 10*tol = " + format_double(thr) + ")"};
}

Outcome check_coverage(const Catalog& cat, const json& a) {
  auto cov = cat.covered_equations();
  std::set<int> have(cov.begin(), cov.end());
  std::vector<std::string> miss;
  int lo = a.at("from").get<int>(), hi = a.at("to").get<int>();
  for (int i = lo; i <= hi; ++i)
    if (!have.count(i)) miss.push_back(std::to_string(i));
  return {miss.empty(), miss.empty() ? "equations " + std::to_string(lo) + ".." + std::to_string(hi) + " all covered"
                                     : "uncovered: " + join(miss, ", ")};
}

Outcome check_pencils_agree(const Catalog& cat, const json& a) {
  const auto& A = cat.pencil(str(a, "a"));
  const auto& B = cat.pencil(str(a, "b"));
  auto al = merged_alphabet({A.alphabet(), B.alphabet()});
  auto d = A.rebased(al) - B.rebased(al);
  return {d.is_zero(), d.is_zero() ? "pencils agree entry by entry" : "entries differ: " + clip(d.to_string())};
}

Outcome check_systems_equal(const Catalog& cat, const json& a) {
  TotalSystem A = substituted(cat.system(str(a, "a")), smap(a, "substitute_a"));
  TotalSystem B = substituted(cat.system(str(a, "b")), smap(a, "substitute_b"));
  if (a.value("drop_constraints", false)) A = A.without_constraints(), B = B.without_constraints();
  auto cons = smap(a, "constraints");
  auto al = with_texts(merged_alphabet({A.alphabet(), B.alphabet()}), texts_of(cons));
  auto cmp = compare_flows(B, A, parse_bindings(cons, al), strs(a, "times"));
  bool eq = all_zero(cmp.residuals);
  bool expect = a.value("expect_equal", true);
  std::string s = eq ? "flows agree (" + std::to_string(cmp.residuals.size()) + " components)"
                     : "flows differ: " + join(cmp.details);
  return {eq == expect, s};
}

Outcome check_degree(const Catalog& cat, const json& a) {
  auto vars = strs(a, "variables");
  std::vector<std::string> parts;
  bool ok = true;
  for (auto& it : a.at("items")) {
    auto h = hamiltonian_expr(str(it, "expression"), cat, a, Alphabet::make(vars));
    Polynomial p = h.as_polynomial();
    unsigned d = 0;
    for (auto& t : p.terms()) {
      unsigned k = 0;
      for (auto& v : vars)
        if (p.alphabet()->contains(v)) k += t.m[p.alphabet()->index(v)];
      d = std::max(d, k);
    }
    unsigned want = it.at("degree").get<unsigned>();
    ok = ok && d == want;
    parts.push_back("deg(" + str(it, "expression") + ") = " + std::to_string(d));
  }
  return {ok, join(parts, ", ")};
}

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> r = {
      {"compatible", check_compatible},
      {"bracket", check_bracket},
      {"conserved", check_conserved},
      {"symmetry", check_symmetry},
      {"involution", check_involution},
      {"weyl", check_weyl},
      {"composition_symmetry", check_composition_symmetry},
      {"chart_flow", check_chart_flow},
      {"jacobian", check_jacobian},
      {"chart_hamiltonian", check_chart_hamiltonian},
      {"poisson_series", check_poisson_series},
      {"recover", check_recover},
      {"pushforward", check_pushforward},
      {"identity_modulo", check_identity_modulo},
      {"map_equal", check_map_equal},
      {"map_component", check_map_component},
      {"zero_curvature", check_zero_curvature},
      {"extract_flow", check_extract_flow},
      {"determinant", check_determinant},
      {"invariants", check_invariants},
      {"invariants_affine", check_invariants_affine},
      {"det_conserved", check_det_conserved},
      {"surface", check_surface},
      {"jet_reduce", check_jet_reduce},
      {"tower_fails", check_tower_fails},
      {"combine", check_combine},
      {"traveling_wave", check_traveling_wave},
      {"homogeneity", check_homogeneity},
      {"specialize", check_specialize},
      {"relation_equal", check_relation_equal},
      {"solution", check_solution},
      {"fixed_solution", check_fixed_solution},
      {"numeric_solution", check_numeric_solution},
      {"stationary_profile", check_stationary_profile},
      {"drift", check_drift},
      {"path_independence", check_path_independence},
      {"fixed_point", check_fixed_point},
      {"coverage", check_coverage},
      {"pencils_agree", check_pencils_agree},
      {"systems_equal", check_systems_equal},
      {"degree", check_degree},
  };
  return r;
}

VerificationReport run_one(const Catalog& cat, const CatalogEntry& e) {
  VerificationReport rep;
  rep.claim_id = e.id;
  rep.anchor = e.anchor.ref;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto out = registry().at(e.payload.at("check").get<std::string>())(cat, e.payload);
    rep.status = out.pass ? "pass" : "fail";
    rep.residual_summary = out.summary;
  } catch (const std::exception& ex) {
    rep.status = "fail";
    rep.residual_summary = std::string("error: ") + ex.what();
  }
  rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

std::vector<std::string> known_checks() {
  std::vector<std::string> out;
  for (auto& [k, v] : registry()) out.push_back(k);
  return out;
}

void validate_glob(const std::string& pattern) {
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '\\') {
      ++i;
      continue;
    }
    if (pattern[i] != '[') continue;
    std::size_t j = i + 1;
    if (j < pattern.size() && (pattern[j] == '!' || pattern[j] == '^')) ++j;
    if (j < pattern.size() && pattern[j] == ']') ++j;
    while (j < pattern.size() && pattern[j] != ']') ++j;
    if (j >= pattern.size()) throw std::invalid_argument("invalid glob '" + pattern + "': unterminated '['");
    i = j;
  }
}

bool claim_matches(const std::string& pattern, const std::string& claim_id) {
  if (fnmatch(pattern.c_str(), claim_id.c_str(), 0) == 0) return true;
  if (pattern.find('/') != std::string::npos) return false;
  return fnmatch((pattern + "/*").c_str(), claim_id.c_str(), 0) == 0;
}

std::vector<VerificationReport> run_claims(const Catalog& catalog, const std::string& filter, unsigned jobs) {
  validate_glob(filter);
  std::vector<const CatalogEntry*> todo;
  for (auto& id : catalog.claim_ids())
    if (claim_matches(filter, id)) todo.push_back(&catalog.at(id));
  std::vector<VerificationReport> out(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < todo.size();) out[i] = run_one(catalog, *todo[i]);
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(todo.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;  // todo was already sorted by id
}

}  // namespace weylham
