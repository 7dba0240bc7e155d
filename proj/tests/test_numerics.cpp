#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "weylham/expr.hpp"
#include "weylham/numerics.hpp"

using namespace weylham;

namespace {

const std::vector<std::pair<std::string, std::string>> PAIRS{{"q1", "p1"}, {"q2", "p2"}};

TotalSystem system29() {
  auto al = Alphabet::make({"q1", "p1", "q2", "p2", "alpha0", "alpha1", "t", "s"});
  HamiltonianSpec spec{
      PAIRS,
      {{"t", parse_poly("q1^2*p1 + alpha0*q1 - q2^2/2 - p2^3 - 3/20*p2 + p1*p2", al)},
       {"s", parse_poly("p1^2/2 - 3/20*p1 - alpha1*q2 - p1*p2^2 + 2*q1^2*p1*p2 + 2*q1*p1*q2 + 2*alpha0*q1*p2",
                        al)}}};
  return hamiltonian_system(spec, {"t", "s"}, {{"alpha1", parse_poly("-alpha0", al)}});
}

TotalSystem system112() {
  return TotalSystem({"q1", "p1"}, {"t", "s"},
                     {{"t", {"q1^2 + p1 - 1/2", "-2*q1*p1 - alpha"}}, {"s", {"q1^2 + p1 - 1/2", "-2*q1*p1 - alpha"}}});
}

}  // namespace

TEST_CASE("compiled expressions") {
  auto al = Alphabet::make({"x", "y"});
  CompiledExpr e(parse_expr("(x^2 + 3*y)/(2*x)", al));
  CHECK(e({2.0, 1.0}) == doctest::Approx(7.0 / 4));
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-12) == "1e-12");
  CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("conservation along the autonomous flows") {
  auto sys = system29();
  CompiledSystem cs(sys, {{"alpha0", 0.0}});
  IntegrateOptions o;
  o.tol = 1e-12;
  for (auto tm : {"t", "s"}) {
    auto tr = integrate_flow(cs, tm, {0.1, 0.1, 0.1, 0.1}, 0.0, 1.0, o);
    CHECK(tr.grid.back() == 1.0);
    // both Hamiltonians are conserved by both flows
    for (auto& [name, h] : std::vector<std::pair<std::string, std::string>>{
             {"K1", "q1^2*p1 + alpha0*q1 - q2^2/2 - p2^3 - 3/20*p2 + p1*p2"},
             {"K2", "p1^2/2 - 3/20*p1 + alpha0*q2 - p1*p2^2 + 2*q1^2*p1*p2 + 2*q1*p1*q2 + 2*alpha0*q1*p2"}}) {
      auto d = drift(cs, tr, name, parse_expr(h, sys.alphabet()));
      CHECK(d.max_rel <= 1e-9);
    }
  }
}

TEST_CASE("halving the tolerance does not increase drift much") {
  auto sys = system29();
  CompiledSystem cs(sys, {{"alpha0", 0.0}});
  auto K1 = parse_expr("q1^2*p1 - q2^2/2 - p2^3 - 3/20*p2 + p1*p2", sys.alphabet());
  IntegrateOptions a, b;
  a.tol = 1e-8;
  b.tol = 5e-9;
  auto da = drift(cs, integrate_flow(cs, "t", {0.1, 0.1, 0.1, 0.1}, 0, 1, a), "K1", K1);
  auto db = drift(cs, integrate_flow(cs, "t", {0.1, 0.1, 0.1, 0.1}, 0, 1, b), "K1", K1);
  CHECK(db.max_abs <= 2 * da.max_abs + 1e-15);
}

TEST_CASE("fixed points and trivial spans") {
  auto sys = system112();
  CompiledSystem cs(sys, {{"alpha", 0.0}});
  IntegrateOptions o;
  o.tol = 1e-12;
  auto tr = integrate_flow(cs, "t", {0.0, 0.5}, 0, 3, o);
  for (auto& y : tr.states) {
    CHECK(std::abs(y[0]) <= 10 * o.tol);
    CHECK(std::abs(y[1] - 0.5) <= 10 * o.tol);
  }
  auto one = integrate_flow(cs, "t", {0.3, 0.2}, 1, 1, o);
  CHECK(one.grid.size() == 1);
  CHECK_THROWS_AS(integrate_flow(cs, "t", {0.3}, 0, 1, o), std::invalid_argument);
  // a zero flow leaves every state unchanged
  TotalSystem zero({"u"}, {"t"}, {{"t", {"0"}}});
  CompiledSystem cz(zero, {});
  auto z = integrate_flow(cz, "t", {1.5}, 0, 2, o);
  for (auto& y : z.states) CHECK(y[0] == 1.5);
}

TEST_CASE("pole crossing reports the partial trajectory") {
  // du/dt = u^2 from u = 1 blows up at t = 1
  TotalSystem sys({"u"}, {"t"}, {{"t", {"u^2"}}});
  CompiledSystem cs(sys, {});
  IntegrateOptions o;
  o.tol = 1e-10;
  try {
    integrate_flow(cs, "t", {1.0}, 0, 2, o);
    FAIL("expected an integration error");
  } catch (const IntegrationError& e) {
    CHECK(e.partial().grid.back() < 1.0);
    CHECK(e.partial().grid.back() > 0.99);
  }
}

TEST_CASE("path independence") {
  auto sys = system29();
  CompiledSystem cs(sys, {{"alpha0", 0.0}});
  CHECK(path_independence(cs, "t", "s", {0.1, 0.1, 0.1, 0.1}, 0.5, 0.5, 1e-12) <= 1e-8);
  CHECK(path_independence(cs, "t", "s", {0.1, 0.1, 0.1, 0.1}, 0, 0, 1e-12) == 0);
}

TEST_CASE("residual of the tanh solution") {
  CompiledSystem cs(system112(), {{"alpha", 0.0}});
  const double r2 = std::sqrt(2.0);
  Solution sol = [&](const Values& v) {
    return std::vector<double>{-std::tanh((v.at("t") + v.at("s")) / r2) / r2, 0.0};
  };
  SolutionDerivative dsol = [&](const std::string&, const Values& v) {
    double c = std::cosh((v.at("t") + v.at("s")) / r2);
    return std::vector<double>{-0.5 / (c * c), 0.0};
  };
  CHECK(residual_on_grid(cs, sol, dsol, product_grid({"t", "s"}, -2, 2, 101)) <= 1e-12);
  // wrong amplitude is detected
  Solution bad = [&](const Values& v) { return std::vector<double>{-std::tanh((v.at("t") + v.at("s")) / r2), 0.0}; };
  CHECK(residual_on_grid(cs, bad, dsol, product_grid({"t", "s"}, -2, 2, 11)) > 1e-3);
}

TEST_CASE("finite difference jets") {
  std::vector<double> u;
  double h = 0.01;
  for (int i = 0; i <= 200; ++i) u.push_back(std::sin(i * h));
  auto j = finite_difference_jets(u, h, 3);
  REQUIRE(j.size() == 195);
  double worst = 0;
  for (std::size_t k = 0; k < j.size(); ++k) {
    double x = (k + 3) * h;
    worst = std::max({worst, std::abs(j[k][1] - std::cos(x)), std::abs(j[k][2] + std::sin(x)),
                      std::abs(j[k][3] + std::cos(x))});
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("trajectory export") {
  TotalSystem sys({"u"}, {"t"}, {{"t", {"-u"}}});
  CompiledSystem cs(sys, {});
  IntegrateOptions o;
  o.output = {0.0, 0.5, 1.0};
  auto tr = integrate_flow(cs, "t", {1.0}, 0, 1, o);
  REQUIRE(tr.grid.size() == 3);
  CHECK(tr.states[2][0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  auto csv = tr.to_csv();
  CHECK(csv.rfind("t,u\n0,1\n0.5,", 0) == 0);
  auto j = nlohmann::json::parse(tr.to_json());
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][1][0] == 0.5);
}
