#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "weylham/ratfunc.hpp"

namespace weylham {

using PolyBindings = std::map<std::string, Polynomial>;

// A labelled residual; zero() is an exact test on the numerator.
struct Residual {
  std::string label;
  Fraction value;
  bool zero() const { return value.is_zero(); }
};
using ResidualList = std::vector<Residual>;

bool all_zero(const ResidualList& r);
// "all zero" or the first nonzero residual (normalized when it is small enough to be readable)
std::string summarize(const ResidualList& r);

// Multi-time flow dx_i = sum_tau f_{i,tau} dtau. Parameters are every other symbol
// used in the flows. Constraints eliminate one parameter each (alpha1 := 1 - alpha0).
class TotalSystem {
 public:
  TotalSystem() = default;
  TotalSystem(std::vector<std::string> variables, std::vector<std::string> times,
              const std::map<std::string, std::vector<std::string>>& flows,
              const std::map<std::string, std::string>& constraints = {},
              const std::vector<std::string>& extra_symbols = {});
  TotalSystem(std::vector<std::string> variables, std::vector<std::string> times,
              std::map<std::string, std::vector<RationalFunction>> flows, PolyBindings constraints);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<std::string>& times() const { return times_; }
  const std::vector<std::string>& parameters() const { return params_; }
  const AlphabetPtr& alphabet() const { return alpha_; }
  const PolyBindings& constraints() const { return constraints_; }
  bool has_time(const std::string& t) const;
  const std::vector<RationalFunction>& flow(const std::string& time) const;
  std::size_t index_of(const std::string& var) const;

  // same system over a larger alphabet (names matched)
  TotalSystem rebased(const AlphabetPtr& target) const;
  TotalSystem without_constraints() const;
  TotalSystem with_constraints(PolyBindings c) const;

  RationalFunction reduce(const RationalFunction& f) const;
  Fraction reduce(const Fraction& f) const;
  Polynomial reduce(const Polynomial& p) const;

 private:
  std::vector<std::string> vars_, times_, params_;
  std::map<std::string, std::vector<RationalFunction>> flows_;
  PolyBindings constraints_;
  AlphabetPtr alpha_;
};

// canonical pairs (q_i, p_i) and one Hamiltonian per time
struct HamiltonianSpec {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::map<std::string, Polynomial> hamiltonians;

  std::vector<std::string> variables() const;  // q1, p1, q2, p2, ...
};

// dq/dtau = dH/dp, dp/dtau = -dH/dq, ordered as HamiltonianSpec::variables()
std::vector<RationalFunction> hamiltonian_to_flow(const HamiltonianSpec& spec, const std::string& time);
TotalSystem hamiltonian_system(const HamiltonianSpec& spec, const std::vector<std::string>& times,
                               PolyBindings constraints = {});

// {f, g} = sum dF/dp dG/dq - dF/dq dG/dp, so {p_i, q_j} = delta_ij
Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g,
                           const std::vector<std::pair<std::string, std::string>>& pairs);
RationalFunction poisson_bracket(const RationalFunction& f, const RationalFunction& g,
                                 const std::vector<std::pair<std::string, std::string>>& pairs);

// d expr/d time + sum_i d expr/dx_i * flow_i, reduced modulo constraints
RationalFunction total_derivative_along_flow(const RationalFunction& expr, const TotalSystem& sys,
                                             const std::string& time);

// per variable: dg/dta + sum dg/dx_j f_j - df/dtb - sum df/dx_j g_j where dx = f dta + g dtb
ResidualList compatibility_residual(const TotalSystem& sys, const std::string& ta, const std::string& tb);

// assignment: variable -> function of the times (and parameters); params: values
// substituted into both the assignment and the flows
ResidualList check_solution(const TotalSystem& sys, const Bindings& assignment, const Bindings& params = {});

}  // namespace weylham
