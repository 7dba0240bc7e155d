#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylham/dynsys.hpp"

namespace weylham {

// Named auxiliaries (f1 := ...) may appear in the component text; they are
// evaluated once per substitution instead of once per occurrence.
// x_out = phi(x_in; params, times), params -> affine images. The inverse, when
// registered, gives x_in in terms of x_out.
class BirationalMap {
 public:
  BirationalMap() = default;
  BirationalMap(std::vector<std::string> vars_in, std::vector<std::string> vars_out,
                const std::vector<std::string>& components, const std::map<std::string, std::string>& param_map = {},
                const std::optional<std::vector<std::string>>& inverse = std::nullopt,
                const std::vector<std::string>& extra_symbols = {},
                const std::vector<std::pair<std::string, std::string>>& auxiliaries = {});
  BirationalMap(std::vector<std::string> vars_in, std::vector<std::string> vars_out,
                std::vector<RationalFunction> components, PolyBindings param_map,
                std::optional<std::vector<RationalFunction>> inverse = std::nullopt);

  static BirationalMap identity(const std::vector<std::string>& vars, const AlphabetPtr& alphabet);

  const std::vector<std::string>& vars_in() const { return in_; }
  const std::vector<std::string>& vars_out() const { return out_; }
  const std::vector<RationalFunction>& components() const { return comps_; }
  const PolyBindings& param_map() const { return pmap_; }
  const std::optional<std::vector<RationalFunction>>& inverse() const { return inv_; }
  const AlphabetPtr& alphabet() const { return alpha_; }

  BirationalMap rebased(const AlphabetPtr& target) const;
  // bindings x_in -> phi, param -> image, over the map's alphabet
  Bindings as_bindings() const;
  Bindings inverse_bindings() const;  // x_in -> inverse component; throws if none

  BirationalMap with_inverse(std::vector<RationalFunction> inv) const;
  // the registered inverse as a map (vars_out -> vars_in); throws if none or
  // if the map moves parameters
  BirationalMap inverted() const;

  // component expressions as written, when built from text; empty otherwise
  const std::vector<std::string>& sources() const { return src_; }
  // components with bound symbols replaced; uses the source text when present
  std::vector<RationalFunction> evaluate(const AlphabetPtr& target, const Bindings& b) const;

 private:
  Bindings aux_values(const AlphabetPtr& target, const Bindings& b) const;

  std::vector<std::string> src_;
  std::vector<std::pair<std::string, std::string>> aux_;
  std::vector<std::string> in_, out_;
  std::vector<RationalFunction> comps_;
  PolyBindings pmap_;
  std::optional<std::vector<RationalFunction>> inv_;
  AlphabetPtr alpha_;
};

// smallest alphabet holding all the given names, in first-seen order
AlphabetPtr merged_alphabet(const std::vector<AlphabetPtr>& parts);

// point map x -> a(b(x)); parameters alpha -> a_param(b_param(alpha))
BirationalMap compose(const BirationalMap& a, const BirationalMap& b);

// lazy componentwise test that a(b(x)) = x and a_param(b_param(alpha)) = alpha
ResidualList composition_identity_residual(const BirationalMap& a, const BirationalMap& b,
                                           const PolyBindings& constraints = {});
// lazy componentwise test that m1 = m2 (same source/target, same parameter images)
ResidualList map_difference(const BirationalMap& m1, const BirationalMap& m2, const PolyBindings& constraints = {});

// per component and time: dphi_i/dtau + sum dphi_i/dx_j f_j(x; alpha) - f_i(phi; mapped alpha)
ResidualList is_symmetry(const BirationalMap& map, const TotalSystem& sys);

struct WeylReport {
  ResidualList s0_squared, s1_squared, pi_squared, pi_s0_pi_vs_s1;
  bool involutions() const { return all_zero(s0_squared) && all_zero(s1_squared) && all_zero(pi_squared); }
};
WeylReport weyl_relations(const BirationalMap& s0, const BirationalMap& s1, const BirationalMap& pi,
                          const PolyBindings& constraints = {});

struct ChartComponent {
  std::string time, variable;
  RationalFunction value;  // in chart coordinates
  bool polynomial;         // denominator free of chart coordinates
};
std::vector<ChartComponent> chart_induced_flow(const BirationalMap& chart, const TotalSystem& sys);
bool all_polynomial(const std::vector<ChartComponent>& c);

// H composed with the chart inverse; polynomial in the chart coordinates?
RationalFunction chart_image(const RationalFunction& h, const BirationalMap& chart, const PolyBindings& constraints = {});
bool polynomial_in(const RationalFunction& f, const std::vector<std::string>& vars);

RationalFunction jacobian_determinant(const BirationalMap& map);

struct PoissonSeries {
  RationalFunction value;
  int depth;  // brackets computed, including the first vanishing one
};
// g + (a/f){f,g} + (a/f)^2/2! {f,{f,g}} + ...; throws if not terminated by max_depth
PoissonSeries poisson_series_reflection(const Polynomial& f, const RationalFunction& alpha, const Polynomial& g,
                                        const std::vector<std::pair<std::string, std::string>>& pairs,
                                        int max_depth);

struct RecoveryResult {
  std::vector<Polynomial> basis;  // spans every admissible Hamiltonian of the degree
  std::vector<std::string> variables;
  std::size_t unknowns = 0, equations = 0, rank = 0;
  // h in the span over the parameter field
  bool contains(const Polynomial& h) const;
};
// ansatz: all monomials of degree <= degree in the pair variables with coefficients
// in the parameter field; conditions: zero principal part of H(chart^-1) in each
// chart's inverted coordinate
RecoveryResult recover_hamiltonian(unsigned degree, const std::vector<std::pair<std::string, std::string>>& pairs,
                                   const std::vector<BirationalMap>& charts, const PolyBindings& constraints,
                                   const std::vector<std::string>& laurent_symbols);

struct TimeRescale {
  std::string old_time, new_time;
  BigRational factor = 1;  // d/d new = factor * d/d old
};
// the induced system in target coordinates
TotalSystem pushforward_system(const BirationalMap& map, const TotalSystem& sys,
                               const std::vector<TimeRescale>& rescale = {});

}  // namespace weylham
