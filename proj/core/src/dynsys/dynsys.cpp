#include "weylham/dynsys.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "weylham/expr.hpp"

namespace weylham {

bool all_zero(const ResidualList& r) {
  return std::all_of(r.begin(), r.end(), [](const Residual& x) { return x.zero(); });
}

std::string summarize(const ResidualList& r) {
  std::size_t bad = 0;
  const Residual* first = nullptr;
  for (auto& x : r)
    if (!x.zero()) {
      ++bad;
      if (!first) first = &x;
    }
  if (!first) return "all " + std::to_string(r.size()) + " residuals zero";
  std::string head = std::to_string(bad) + "/" + std::to_string(r.size()) + " nonzero; first " + first->label + " = ";
  if (first->value.num.num_terms() + first->value.den.num_terms() <= 400) {
    std::string s = first->value.normalized().to_string();
    if (s.size() > 400) s = s.substr(0, 400) + "...";
    return head + s;
  }
  return head + "<numerator with " + std::to_string(first->value.num.num_terms()) + " terms>";
}

namespace {

std::vector<std::string> collect_params(const std::vector<std::string>& vars, const std::vector<std::string>& times,
                                        const std::vector<std::string>& seen) {
  std::vector<std::string> out;
  for (auto& s : seen)
    if (std::find(vars.begin(), vars.end(), s) == vars.end() &&
        std::find(times.begin(), times.end(), s) == times.end() &&
        std::find(out.begin(), out.end(), s) == out.end())
      out.push_back(s);
  return out;
}

AlphabetPtr system_alphabet(const std::vector<std::string>& vars, const std::vector<std::string>& params,
                            const std::vector<std::string>& times) {
  std::vector<std::string> all = vars;
  all.insert(all.end(), params.begin(), params.end());
  all.insert(all.end(), times.begin(), times.end());
  return Alphabet::make(all);
}

}  // namespace

TotalSystem::TotalSystem(std::vector<std::string> variables, std::vector<std::string> times,
                         const std::map<std::string, std::vector<std::string>>& flows,
                         const std::map<std::string, std::string>& constraints,
                         const std::vector<std::string>& extra_symbols)
    : vars_(std::move(variables)), times_(std::move(times)) {
  std::vector<std::string> seen = extra_symbols;
  for (auto& [t, fs] : flows)
    for (auto& f : fs)
      for (auto& s : expr_symbols(f)) seen.push_back(s);
  for (auto& [p, v] : constraints) {
    seen.push_back(p);
    for (auto& s : expr_symbols(v)) seen.push_back(s);
  }
  params_ = collect_params(vars_, times_, seen);
  alpha_ = system_alphabet(vars_, params_, times_);
  for (auto& t : times_) {
    auto it = flows.find(t);
    if (it == flows.end()) throw std::invalid_argument("no flow for time '" + t + "'");
    if (it->second.size() != vars_.size())
      throw std::invalid_argument("flow for '" + t + "' has " + std::to_string(it->second.size()) +
                                  " components, expected " + std::to_string(vars_.size()));
    std::vector<RationalFunction> comps;
    for (auto& f : it->second) comps.push_back(parse_expr(f, alpha_));
    flows_[t] = std::move(comps);
  }
  for (auto& [p, v] : constraints) constraints_[p] = parse_poly(v, alpha_);
}

TotalSystem::TotalSystem(std::vector<std::string> variables, std::vector<std::string> times,
                         std::map<std::string, std::vector<RationalFunction>> flows, PolyBindings constraints)
    : vars_(std::move(variables)), times_(std::move(times)) {
  std::vector<std::string> seen;
  for (auto& [t, fs] : flows)
    for (auto& f : fs)
      for (auto& s : f.free_symbols()) seen.push_back(s);
  for (auto& [p, v] : constraints) {
    seen.push_back(p);
    for (auto& s : v.free_symbols()) seen.push_back(s);
  }
  params_ = collect_params(vars_, times_, seen);
  alpha_ = system_alphabet(vars_, params_, times_);
  for (auto& t : times_) {
    auto it = flows.find(t);
    if (it == flows.end() || it->second.size() != vars_.size())
      throw std::invalid_argument("flow for '" + t + "' missing or of wrong dimension");
    for (auto& f : it->second) flows_[t].push_back(f.rebased(alpha_));
  }
  for (auto& [p, v] : constraints) constraints_[p] = v.rebased(alpha_);
}

bool TotalSystem::has_time(const std::string& t) const {
  return std::find(times_.begin(), times_.end(), t) != times_.end();
}

const std::vector<RationalFunction>& TotalSystem::flow(const std::string& time) const {
  auto it = flows_.find(time);
  if (it == flows_.end()) throw std::out_of_range("unknown time symbol '" + time + "'");
  return it->second;
}

std::size_t TotalSystem::index_of(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) throw std::out_of_range("unknown variable '" + var + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

TotalSystem TotalSystem::rebased(const AlphabetPtr& target) const {
  TotalSystem r = *this;
  r.alpha_ = target;
  for (auto& [t, fs] : r.flows_)
    for (auto& f : fs) f = f.rebased(target);
  for (auto& [p, v] : r.constraints_) v = v.rebased(target);
  return r;
}

TotalSystem TotalSystem::without_constraints() const { return with_constraints({}); }

TotalSystem TotalSystem::with_constraints(PolyBindings c) const {
  TotalSystem r = *this;
  for (auto& [p, v] : c) v = v.rebased(alpha_);
  r.constraints_ = std::move(c);
  return r;
}

RationalFunction TotalSystem::reduce(const RationalFunction& f) const {
  if (constraints_.empty()) return f;
  Bindings b;
  for (auto& [p, v] : constraints_) b[p] = RationalFunction(v.rebased(f.alphabet() ? f.alphabet() : alpha_));
  return f.substitute(b);
}

Fraction TotalSystem::reduce(const Fraction& f) const {
  if (constraints_.empty()) return f;
  PolyBindings b;
  auto al = f.num.alphabet() ? f.num.alphabet() : alpha_;
  for (auto& [p, v] : constraints_) b[p] = v.rebased(al);
  return weylham::reduce(f, b);
}

Polynomial TotalSystem::reduce(const Polynomial& p) const {
  if (constraints_.empty()) return p;
  PolyBindings b;
  for (auto& [k, v] : constraints_) b[k] = v.rebased(p.alphabet() ? p.alphabet() : alpha_);
  return p.substitute(b);
}

std::vector<std::string> HamiltonianSpec::variables() const {
  std::vector<std::string> v;
  for (auto& [q, p] : pairs) {
    v.push_back(q);
    v.push_back(p);
  }
  return v;
}

std::vector<RationalFunction> hamiltonian_to_flow(const HamiltonianSpec& spec, const std::string& time) {
  auto it = spec.hamiltonians.find(time);
  if (it == spec.hamiltonians.end()) throw std::out_of_range("no Hamiltonian for time '" + time + "'");
  const Polynomial& H = it->second;
  std::vector<RationalFunction> out;
  for (auto& [q, p] : spec.pairs) {
    out.emplace_back(H.depends_on(p) ? H.derivative(p) : Polynomial(H.alphabet(), BigRational(0)));
    out.emplace_back(H.depends_on(q) ? -H.derivative(q) : Polynomial(H.alphabet(), BigRational(0)));
  }
  return out;
}

TotalSystem hamiltonian_system(const HamiltonianSpec& spec, const std::vector<std::string>& times,
                               PolyBindings constraints) {
  std::map<std::string, std::vector<RationalFunction>> flows;
  for (auto& t : times) flows[t] = hamiltonian_to_flow(spec, t);
  return TotalSystem(spec.variables(), times, std::move(flows), std::move(constraints));
}

namespace {

Polynomial d_or_zero(const Polynomial& f, const std::string& s) {
  return f.depends_on(s) ? f.derivative(s) : Polynomial(f.alphabet(), BigRational(0));
}

}  // namespace

Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g,
                           const std::vector<std::pair<std::string, std::string>>& pairs) {
  Polynomial r(common_alphabet(f.alphabet(), g.alphabet()), BigRational(0));
  for (auto& [q, p] : pairs) r = r + d_or_zero(f, p) * d_or_zero(g, q) - d_or_zero(f, q) * d_or_zero(g, p);
  return r;
}

RationalFunction poisson_bracket(const RationalFunction& f, const RationalFunction& g,
                                 const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (f.is_polynomial() && g.is_polynomial())
    return RationalFunction(poisson_bracket(f.as_polynomial(), g.as_polynomial(), pairs));
  RationalFunction r(Polynomial(common_alphabet(f.alphabet(), g.alphabet()), BigRational(0)));
  auto d = [](const RationalFunction& h, const std::string& s) {
    return h.depends_on(s) ? h.derivative(s) : RationalFunction(Polynomial(h.alphabet(), BigRational(0)));
  };
  for (auto& [q, p] : pairs) r = r + d(f, p) * d(g, q) - d(f, q) * d(g, p);
  return r;
}

namespace {

RationalFunction along(const RationalFunction& e, const std::vector<std::string>& vars,
                       const std::vector<RationalFunction>& flow, const std::string& time) {
  RationalFunction r = e.depends_on(time) ? e.derivative(time) : RationalFunction(Polynomial(e.alphabet(), BigRational(0)));
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (e.depends_on(vars[j])) r = r + e.derivative(vars[j]) * flow[j];
  return r;
}

}  // namespace

RationalFunction total_derivative_along_flow(const RationalFunction& expr, const TotalSystem& sys,
                                             const std::string& time) {
  auto e = expr.rebased(sys.alphabet());
  return sys.reduce(along(e, sys.variables(), sys.flow(time), time));
}

ResidualList compatibility_residual(const TotalSystem& sys, const std::string& ta, const std::string& tb) {
  const auto& f = sys.flow(ta);
  const auto& g = sys.flow(tb);
  ResidualList out;
  for (std::size_t i = 0; i < sys.variables().size(); ++i) {
    RationalFunction r = along(g[i], sys.variables(), f, ta) - along(f[i], sys.variables(), g, tb);
    out.push_back({sys.variables()[i], Fraction::of(sys.reduce(r))});
  }
  return out;
}

ResidualList check_solution(const TotalSystem& sys, const Bindings& assignment, const Bindings& params) {
  for (auto& v : sys.variables())
    if (!assignment.count(v)) throw std::invalid_argument("assignment misses variable '" + v + "'");
  std::vector<std::string> names = sys.alphabet()->names();
  auto al = sys.alphabet();
  Bindings full;
  for (auto& [k, v] : params) full[k] = v.rebased(al);
  Bindings sol;
  for (auto& v : sys.variables()) sol[v] = assignment.at(v).rebased(al).substitute(full);
  Bindings both = full;
  for (auto& [k, v] : sol) both[k] = v;
  ResidualList out;
  for (auto& t : sys.times()) {
    const auto& fl = sys.flow(t);
    for (std::size_t i = 0; i < sys.variables().size(); ++i) {
      const auto& x = sol.at(sys.variables()[i]);
      RationalFunction lhs = x.depends_on(t) ? x.derivative(t) : RationalFunction(Polynomial(al, BigRational(0)));
      RationalFunction r = lhs - fl[i].substitute(both);
      out.push_back({"d" + sys.variables()[i] + "/d" + t, Fraction::of(sys.reduce(r))});
    }
  }
  return out;
}

}  // namespace weylham
