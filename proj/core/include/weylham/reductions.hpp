#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weylham/dynsys.hpp"

namespace weylham {

// Jet variables are named <unknown>_<letters>, one letter per derivative, the
// letters grouped in the order of the independents: u_tts = d^3u/dt^2ds.
struct JetName {
  std::string unknown;
  std::vector<unsigned> order;  // per independent
};

std::string jet_name(const std::string& unknown, const std::vector<unsigned>& order,
                     const std::vector<std::string>& independents);
std::optional<JetName> parse_jet(const std::string& name, const std::vector<std::string>& unknowns,
                                 const std::vector<std::string>& independents);

// relation = 0, polynomial in jet variables, parameters and explicit
// independents. A relation read from a rational expression is stored
// multiplied through by its denominator, kept as cleared_factor.
struct ScalarODE {
  std::vector<std::string> unknowns;
  std::vector<std::string> independents;
  std::string label;  // usually the jet the relation is solved for
  Polynomial relation;
  Polynomial cleared_factor;

  // "lhs = rhs" or a bare expression meaning "expr = 0"
  static ScalarODE parse(const std::vector<std::string>& unknowns, const std::vector<std::string>& independents,
                         const std::string& text, std::string label = {});
  static ScalarODE from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  unsigned highest_order() const;
};

// the same relation up to a nonzero constant times a monomial in the
// undifferentiated unknowns (the factors printed forms divide by)
bool same_relation(const ScalarODE& a, const ScalarODE& b);

// total derivative in one independent (adds the needed jet variables)
ScalarODE total_derivative(const ScalarODE& ode, const std::string& independent);

// Checks the derivative tower (flow_tau of the variable behind a jet equals the
// variable behind its tau-successor, whenever that successor is identified)
// and returns one relation per jet whose successor is not identified, keyed
// by that successor's name. Throws std::runtime_error naming the first
// violation. Independents are the system's time symbols.
std::map<std::string, ScalarODE> jet_reduce(const TotalSystem& sys,
                                            const std::map<std::string, std::string>& identifications,
                                            const std::vector<std::string>& unknowns);

struct CombineStep {
  std::size_t index;  // into the input list
  std::string coefficient = "1";  // expression in jets and parameters
  std::string differentiate;  // independents applied in order, e.g. "t"
};
ScalarODE combine_flows(const std::vector<ScalarODE>& odes, const std::vector<CombineStep>& recipe);

// d/dt -> d/dT, d/ds -> speed * d/dT; the unknown is renamed
ScalarODE traveling_wave_reduce(const ScalarODE& ode, const std::string& speed, const std::string& new_independent,
                                const std::string& new_unknown);

struct HomogeneityReport {
  bool homogeneous = false;
  BigRational weight;
  std::vector<std::string> offending;  // terms with a different weight
};
// weights: explicit weights for jets, parameters or independents; a jet not
// listed weighs weight(unknown) + sum order_i * weight(d/d independent_i),
// with derivative weights given under the key "d/<independent>"
HomogeneityReport homogeneity_check(const ScalarODE& ode, const std::map<std::string, BigRational>& weights);

// substitute parameter or jet values
ScalarODE specialize(const ScalarODE& ode, const std::map<std::string, std::string>& values);

}  // namespace weylham
