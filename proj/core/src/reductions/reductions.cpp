#include "weylham/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "weylham/expr.hpp"
#include "weylham/json_io.hpp"
#include "weylham/lax.hpp"
#include "weylham/maps.hpp"

namespace weylham {

namespace {

void check_independents(const std::vector<std::string>& independents) {
  for (auto& i : independents)
    if (i.size() != 1) throw std::invalid_argument("independent symbols must be single letters, got '" + i + "'");
}

AlphabetPtr alphabet_with(const AlphabetPtr& a, const std::vector<std::string>& extra) {
  std::vector<std::string> names = a ? a->names() : std::vector<std::string>{};
  for (auto& n : extra)
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  return Alphabet::make(names);
}

ScalarODE from_rational(std::vector<std::string> unknowns, std::vector<std::string> independents, std::string label,
                        const RationalFunction& r) {
  ScalarODE o;
  o.unknowns = std::move(unknowns);
  o.independents = std::move(independents);
  o.label = std::move(label);
  o.relation = r.num();
  o.cleared_factor = r.den();
  return o;
}

}  // namespace

std::string jet_name(const std::string& unknown, const std::vector<unsigned>& order,
                     const std::vector<std::string>& independents) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (unsigned k = 0; k < order[i]; ++k) s += independents[i];
  return s.empty() ? unknown : unknown + "_" + s;
}

std::optional<JetName> parse_jet(const std::string& name, const std::vector<std::string>& unknowns,
                                 const std::vector<std::string>& independents) {
  check_independents(independents);
  for (auto& u : unknowns) {
    if (name == u) return JetName{u, std::vector<unsigned>(independents.size(), 0)};
    if (name.size() > u.size() + 1 && name.compare(0, u.size(), u) == 0 && name[u.size()] == '_') {
      JetName j{u, std::vector<unsigned>(independents.size(), 0)};
      std::size_t last = 0;
      bool ok = true;
      for (std::size_t k = u.size() + 1; k < name.size() && ok; ++k) {
        auto it = std::find_if(independents.begin(), independents.end(),
                               [&](const std::string& x) { return x[0] == name[k]; });
        if (it == independents.end()) {
          ok = false;
          break;
        }
        std::size_t idx = static_cast<std::size_t>(it - independents.begin());
        if (idx < last) throw std::invalid_argument("jet '" + name + "' is not in canonical derivative order");
        last = idx;
        ++j.order[idx];
      }
      if (ok) return j;
    }
  }
  return std::nullopt;
}

ScalarODE ScalarODE::parse(const std::vector<std::string>& unknowns, const std::vector<std::string>& independents,
                           const std::string& text, std::string label) {
  check_independents(independents);
  auto eq = text.find('=');
  std::string lhs = eq == std::string::npos ? text : text.substr(0, eq);
  std::string rhs = eq == std::string::npos ? "0" : text.substr(eq + 1);
  if (rhs.find('=') != std::string::npos) throw std::invalid_argument("relation has more than one '='");
  auto names = expr_symbols(text);
  for (auto& n : names) parse_jet(n, unknowns, independents);  // rejects non-canonical jets
  auto al = Alphabet::make(names);
  RationalFunction r = parse_expr(lhs, al) - parse_expr(rhs, al);
  if (label.empty()) {
    std::string t = lhs;
    t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
    label = t;
  }
  return from_rational(unknowns, independents, std::move(label), r);
}

ScalarODE ScalarODE::from_json(const nlohmann::json& j) {
  std::vector<std::string> unknowns;
  if (j.at("unknown").is_array())
    unknowns = j.at("unknown").get<std::vector<std::string>>();
  else
    unknowns.push_back(j.at("unknown").get<std::string>());
  return parse(unknowns, j.at("independents").get<std::vector<std::string>>(), j.at("relation").get<std::string>(),
               j.value("label", std::string{}));
}

nlohmann::json ScalarODE::to_json() const {
  nlohmann::json j;
  if (unknowns.size() == 1)
    j["unknown"] = unknowns[0];
  else
    j["unknown"] = unknowns;
  j["independents"] = independents;
  j["label"] = label;
  j["relation"] = relation.to_string() + " = 0";
  if (!cleared_factor.is_constant()) j["cleared_factor"] = cleared_factor.to_string();
  return j;
}

unsigned ScalarODE::highest_order() const {
  unsigned h = 0;
  for (auto& s : relation.free_symbols())
    if (auto j = parse_jet(s, unknowns, independents))
      h = std::max(h, std::accumulate(j->order.begin(), j->order.end(), 0u));
  return h;
}

bool same_relation(const ScalarODE& a, const ScalarODE& b) {
  if (a.relation.is_zero() || b.relation.is_zero()) return a.relation.is_zero() && b.relation.is_zero();
  auto al = merged_alphabet({a.relation.alphabet(), b.relation.alphabet()});
  RationalFunction ratio = RationalFunction(a.relation.rebased(al)) / RationalFunction(b.relation.rebased(al));
  auto allowed = [&](const Polynomial& p) {
    if (p.num_terms() != 1) return false;
    for (auto& s : p.free_symbols())
      if (std::find(a.unknowns.begin(), a.unknowns.end(), s) == a.unknowns.end()) return false;
    return true;
  };
  return allowed(ratio.num()) && allowed(ratio.den());
}

ScalarODE total_derivative(const ScalarODE& ode, const std::string& independent) {
  auto pos = std::find(ode.independents.begin(), ode.independents.end(), independent);
  if (pos == ode.independents.end()) throw std::invalid_argument("unknown independent '" + independent + "'");
  std::size_t k = static_cast<std::size_t>(pos - ode.independents.begin());
  std::vector<std::pair<std::string, std::string>> succ;
  std::vector<std::string> extra;
  for (auto& s : ode.relation.free_symbols())
    if (auto j = parse_jet(s, ode.unknowns, ode.independents)) {
      auto o = j->order;
      ++o[k];
      succ.emplace_back(s, jet_name(j->unknown, o, ode.independents));
      extra.push_back(succ.back().second);
    }
  auto al = alphabet_with(ode.relation.alphabet(), extra);
  Polynomial R = ode.relation.rebased(al);
  Polynomial d = R.depends_on(independent) ? R.derivative(independent) : Polynomial(al, BigRational(0));
  for (auto& [j, n] : succ) d = d + R.derivative(j) * Polynomial::symbol(al, n);
  ScalarODE out = ode;
  out.label = "d/d" + independent + " " + ode.label;
  out.relation = d;
  out.cleared_factor = ode.cleared_factor.rebased(al);
  return out;
}

std::map<std::string, ScalarODE> jet_reduce(const TotalSystem& sys,
                                            const std::map<std::string, std::string>& identifications,
                                            const std::vector<std::string>& unknowns) {
  const auto& times = sys.times();
  check_independents(times);
  std::map<std::string, JetName> jets;
  std::map<std::string, std::string> var_to_jet;
  for (auto& [jn, var] : identifications) {
    auto j = parse_jet(jn, unknowns, times);
    if (!j) throw std::invalid_argument("'" + jn + "' is not a jet of the unknowns");
    sys.index_of(var);
    jets.emplace(jn, *j);
    if (!var_to_jet.emplace(var, jn).second) throw std::invalid_argument("variable '" + var + "' identified twice");
  }
  // relation alphabet: jets, their successors, parameters, times
  std::vector<std::string> names;
  for (auto& [jn, j] : jets) {
    names.push_back(jn);
    for (std::size_t k = 0; k < times.size(); ++k) {
      auto o = j.order;
      ++o[k];
      names.push_back(jet_name(j.unknown, o, times));
    }
  }
  for (auto& p : sys.parameters()) names.push_back(p);
  for (auto& t : times) names.push_back(t);
  std::vector<std::string> uniq;
  for (auto& n : names)
    if (std::find(uniq.begin(), uniq.end(), n) == uniq.end()) uniq.push_back(n);
  auto al = Alphabet::make(uniq);
  Bindings to_jets;
  for (auto& [var, jn] : var_to_jet) to_jets[var] = RationalFunction(Polynomial::symbol(al, jn));
  for (auto& p : sys.parameters()) to_jets[p] = RationalFunction(Polynomial::symbol(al, p));
  for (auto& t : times) to_jets[t] = RationalFunction(Polynomial::symbol(al, t));

  std::map<std::string, ScalarODE> out;
  for (auto& [jn, j] : jets) {
    const std::string& var = identifications.at(jn);
    std::size_t vi = sys.index_of(var);
    for (std::size_t k = 0; k < times.size(); ++k) {
      auto o = j.order;
      ++o[k];
      std::string next = jet_name(j.unknown, o, times);
      RationalFunction f = sys.reduce(sys.flow(times[k])[vi]);
      auto it = identifications.find(next);
      if (it != identifications.end()) {
        RationalFunction expect(Polynomial::symbol(sys.alphabet(), it->second));
        if (!(f == expect))
          throw std::runtime_error("tower property fails: d" + var + "/d" + times[k] + " = " + f.to_string() +
                                   ", expected " + it->second + " (" + next + ")");
        continue;
      }
      for (auto& s : f.free_symbols())
        if (std::find(sys.variables().begin(), sys.variables().end(), s) != sys.variables().end() &&
            !var_to_jet.count(s))
          throw std::runtime_error("d" + var + "/d" + times[k] + " involves '" + s + "', which has no jet");
      RationalFunction r = RationalFunction(Polynomial::symbol(al, next)) - f.substitute(to_jets);
      out.emplace(next, from_rational(unknowns, times, next, r));
    }
  }
  return out;
}

ScalarODE combine_flows(const std::vector<ScalarODE>& odes, const std::vector<CombineStep>& recipe) {
  if (recipe.empty()) throw std::invalid_argument("empty recipe");
  std::vector<ScalarODE> parts;
  std::vector<AlphabetPtr> alphas;
  for (auto& st : recipe) {
    if (st.index >= odes.size()) throw std::out_of_range("recipe refers to a missing relation");
    ScalarODE o = odes[st.index];
    for (char c : st.differentiate) o = total_derivative(o, std::string(1, c));
    alphas.push_back(o.relation.alphabet());
    alphas.push_back(Alphabet::make(expr_symbols(st.coefficient)));
    parts.push_back(std::move(o));
  }
  auto al = merged_alphabet(alphas);
  RationalFunction sum(Polynomial(al, BigRational(0)));
  for (std::size_t i = 0; i < parts.size(); ++i)
    sum = sum + parse_expr(recipe[i].coefficient, al) * RationalFunction(parts[i].relation.rebased(al));
  return from_rational(odes[recipe[0].index].unknowns, odes[recipe[0].index].independents, "combination", sum);
}

ScalarODE traveling_wave_reduce(const ScalarODE& ode, const std::string& speed, const std::string& new_independent,
                                const std::string& new_unknown) {
  if (ode.independents.size() != 2) throw std::invalid_argument("traveling waves need two independents");
  for (auto& i : ode.independents)
    if (ode.relation.depends_on(i)) throw std::invalid_argument("relation depends explicitly on " + i);
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::pair<std::string, unsigned>>> jets;
  for (auto& s : ode.relation.alphabet()->names()) {
    if (auto j = parse_jet(s, ode.unknowns, ode.independents)) {
      if (j->unknown != ode.unknowns[0] || ode.unknowns.size() != 1)
        throw std::invalid_argument("traveling waves need a single unknown");
      unsigned total = j->order[0] + j->order[1];
      std::string n = jet_name(new_unknown, {total}, {new_independent});
      jets.push_back({s, {n, j->order[1]}});
      names.push_back(n);
    } else if (std::find(ode.independents.begin(), ode.independents.end(), s) == ode.independents.end()) {
      names.push_back(s);
    }
  }
  for (auto& s : expr_symbols(speed)) names.push_back(s);
  std::vector<std::string> uniq;
  for (auto& n : names)
    if (std::find(uniq.begin(), uniq.end(), n) == uniq.end()) uniq.push_back(n);
  auto al = Alphabet::make(uniq);
  Polynomial c = parse_poly(speed, al);
  PolyBindings b;
  for (auto& [old, nw] : jets) b[old] = Polynomial::symbol(al, nw.first) * c.pow(nw.second);
  for (auto& s : ode.relation.free_symbols())
    if (!b.count(s)) b[s] = Polynomial::symbol(al, s);
  ScalarODE out;
  out.unknowns = {new_unknown};
  out.independents = {new_independent};
  out.label = "traveling wave of " + ode.label;
  out.relation = ode.relation.substitute(b);
  out.cleared_factor = ode.cleared_factor.is_constant() ? Polynomial(al, ode.cleared_factor.constant_value())
                                                        : ode.cleared_factor.substitute(b);
  return out;
}

HomogeneityReport homogeneity_check(const ScalarODE& ode, const std::map<std::string, BigRational>& weights) {
  auto al = ode.relation.alphabet();
  std::vector<BigRational> w(al ? al->size() : 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& s = al->name(i);
    if (!ode.relation.depends_on(s)) continue;
    auto it = weights.find(s);
    if (it != weights.end()) {
      w[i] = it->second;
      continue;
    }
    auto j = parse_jet(s, ode.unknowns, ode.independents);
    if (!j || !weights.count(j->unknown)) throw std::invalid_argument("no weight for '" + s + "'");
    BigRational v = weights.at(j->unknown);
    for (std::size_t k = 0; k < j->order.size(); ++k)
      if (j->order[k]) {
        auto d = weights.find("d/" + ode.independents[k]);
        if (d == weights.end()) throw std::invalid_argument("no weight for d/" + ode.independents[k]);
        v += d->second * j->order[k];
      }
    w[i] = v;
  }
  HomogeneityReport r;
  bool first = true;
  for (auto& t : ode.relation.terms()) {
    BigRational tw = 0;
    for (std::size_t i = 0; i < w.size(); ++i) tw += w[i] * t.m[i];
    if (first) {
      r.weight = tw;
      first = false;
    } else if (tw != r.weight) {
      Polynomial single(al, detail::QPoly::from_terms({{t.m, t.c}}));
      r.offending.push_back(single.to_string() + " has weight " + tw.get_str());
    }
  }
  r.homogeneous = r.offending.empty();
  return r;
}

ScalarODE specialize(const ScalarODE& ode, const std::map<std::string, std::string>& values) {
  std::vector<std::string> extra;
  for (auto& [k, v] : values)
    for (auto& s : expr_symbols(v)) extra.push_back(s);
  auto al = alphabet_with(ode.relation.alphabet(), extra);
  PolyBindings b;
  for (auto& [k, v] : values) b[k] = parse_poly(v, al);
  ScalarODE out = ode;
  out.relation = ode.relation.rebased(al).substitute(b);
  out.cleared_factor = ode.cleared_factor.rebased(al).substitute(b);
  return out;
}

}  // namespace weylham
