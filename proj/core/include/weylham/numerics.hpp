#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylham/dynsys.hpp"

namespace weylham {

using Values = std::map<std::string, double>;

// Double-precision evaluator for a rational function; symbols are read from a
// slot vector laid out like the alphabet it was compiled against.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const RationalFunction& f);
  double operator()(const std::vector<double>& slots) const;

 private:
  struct Term {
    double c;
    std::vector<std::pair<std::size_t, unsigned>> pw;
  };
  static std::vector<Term> compile(const Polynomial& p);
  static double eval(const std::vector<Term>& t, const std::vector<double>& s);
  std::vector<Term> num_, den_;
  bool has_den_ = false;
};

// All flows of a system with the parameters fixed.
class CompiledSystem {
 public:
  CompiledSystem(const TotalSystem& sys, const Values& params);
  const TotalSystem& system() const { return sys_; }
  std::size_t dimension() const { return sys_.variables().size(); }
  // d state / d time at the given state and time values (missing times are 0)
  void rhs(const std::string& time, const std::vector<double>& state, const Values& times,
           std::vector<double>& out) const;
  // value of an expression over the system alphabet
  double evaluate(const CompiledExpr& e, const std::vector<double>& state, const Values& times) const;
  CompiledExpr compile(const RationalFunction& f) const;

 private:
  void fill(const std::vector<double>& state, const Values& times, std::vector<double>& slots) const;
  TotalSystem sys_;
  std::vector<double> base_;
  std::vector<std::size_t> var_slot_;
  std::map<std::string, std::vector<CompiledExpr>> flows_;
};

struct Trajectory {
  std::string system_id, time;
  std::vector<std::string> variables;
  Values params, fixed_times;
  double tol = 0;
  std::vector<double> grid;
  std::vector<std::vector<double>> states;

  std::string to_csv() const;
  std::string to_json() const;
};

// thrown on step-size underflow or a non-finite state; carries what was
// integrated up to the last good state
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& msg, Trajectory partial)
      : std::runtime_error(msg), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

struct IntegrateOptions {
  double tol = 1e-10;
  // when non-empty, record exactly these times (increasing, inside the span)
  // instead of every accepted step
  std::vector<double> output;
  Values fixed_times;  // values of the other time symbols
  std::size_t max_steps = 10000000;
};

// Dormand-Prince 5(4) with PI step control; mixed absolute/relative error per
// step at most tol. Integrates backwards when t1 < t0.
Trajectory integrate_flow(const CompiledSystem& sys, const std::string& time, const std::vector<double>& init,
                          double t0, double t1, const IntegrateOptions& opt = {});

struct DriftReport {
  std::string quantity;
  double initial = 0, max_abs = 0, max_rel = 0;
};
DriftReport drift(const CompiledSystem& sys, const Trajectory& tr, const std::string& name,
                  const RationalFunction& quantity);

// integrates ta then tb versus tb then ta from the same point and returns the
// largest endpoint component difference
double path_independence(const CompiledSystem& sys, const std::string& ta, const std::string& tb,
                         const std::vector<double>& init, double la, double lb, double tol);

// max over the grid, times and components of |d sol/d tau - flow_tau(sol)|
using Solution = std::function<std::vector<double>(const Values& times)>;
using SolutionDerivative = std::function<std::vector<double>(const std::string& time, const Values& times)>;
double residual_on_grid(const CompiledSystem& sys, const Solution& sol, const SolutionDerivative& dsol,
                        const std::vector<Values>& grid);

// tensor grid with n points per time on [a, b]
std::vector<Values> product_grid(const std::vector<std::string>& times, double a, double b, std::size_t n);

// Derivatives u, u', ..., u^(order) at interior samples of a uniform grid,
// fourth-order central differences. Row i holds the jets at sample i + 3.
std::vector<std::vector<double>> finite_difference_jets(const std::vector<double>& samples, double h,
                                                        unsigned order);

// shortest round-trip decimal form
std::string format_double(double v);

}  // namespace weylham
