#include <doctest.h>

#include "weylham/expr.hpp"
#include "weylham/lax.hpp"
#include "weylham/maps.hpp"

using namespace weylham;

namespace {

const std::vector<std::string> V6{"x", "y", "z", "w", "q", "p"};

AlphabetPtr lax_alphabet() {
  return Alphabet::make({"x", "y", "z", "w", "q", "p", "eps1", "eps2", "alpha0", "alpha1", "t", "s", "T"});
}

MatrixPencil pencil_A(const AlphabetPtr& al) {
  // stored as printed (-A), negated here
  return -MatrixPencil::parse({"eps1 + 2*z*T + 8*p*T^2", "y + 4*q*T - 8*T^2", "-x*T - 4*w*T^2 - 8*T^3",
                               "eps2 - 2*z*T - 8*p*T^2"},
                              al);
}
MatrixPencil pencil_B1(const AlphabetPtr& al) { return MatrixPencil::parse({"p", "-1", "-T", "-p"}, al); }
MatrixPencil pencil_B3(const AlphabetPtr& al) {
  // the printed B3 scaled by 4 makes the pencil compatible with the s-flow
  return MatrixPencil::parse({"z/4 + p*T", "q/2 - T", "-w/2*T - T^2", "-z/4 - p*T"}, al).scaled(4);
}

TotalSystem flow_system(const AlphabetPtr& al, const std::string& time, const std::vector<std::string>& f) {
  (void)al;
  return TotalSystem(V6, {time}, {{time, f}}, {}, {});
}

const std::vector<std::string> FLOW11{"-2*x*p - 1 + eps1 - eps2", "2*y*p + eps1 - eps2", "(x+y)/2",
                                      "-2*w*p + z", "2*q*p + z", "(w+q)/2"};
const std::vector<std::string> FLOW15{"-2*x*z - 2*(1 - eps1 + eps2)*w", "2*y*z - 2*(eps1 - eps2)*q",
                                      "-x*q + y*w - 2*p", "-2*x*p - 2*(1 - eps1 + eps2) - (eps1 - eps2)",
                                      "2*y*p + (1 - eps1 + eps2) + 2*(eps1 - eps2)", "(x+y)/2"};

}  // namespace

TEST_CASE("pencil arithmetic") {
  auto al = lax_alphabet();
  auto A = pencil_A(al);
  CHECK(A.spectral_degree() == 3);
  CHECK((A - A).is_zero());
  auto B = pencil_B1(al);
  CHECK_FALSE((A * B - B * A).is_zero());
}

TEST_CASE("zero curvature with delta = 1") {
  auto al = lax_alphabet();
  auto A = pencil_A(al);
  CHECK(zero_curvature_residual(A, pencil_B1(al), flow_system(al, "t", FLOW11), "t", 1).is_zero());
  CHECK(zero_curvature_residual(A, pencil_B3(al), flow_system(al, "s", FLOW15), "s", 1).is_zero());
  // the printed B3 without the factor 4 fails
  auto B3p = pencil_B3(al).scaled(BigRational(1, 4));
  CHECK_FALSE(zero_curvature_residual(A, B3p, flow_system(al, "s", FLOW15), "s", 1).is_zero());
  MatrixPencil Z({Polynomial(al, 0), Polynomial(al, 0), Polynomial(al, 0), Polynomial(al, 0)});
  CHECK(zero_curvature_residual(Z, Z, flow_system(al, "t", FLOW11), "t", 1).is_zero());
}

TEST_CASE("zero curvature is linear in A") {
  auto al = lax_alphabet();
  auto A = pencil_A(al);
  auto A2 = MatrixPencil::parse({"x*T", "y", "z^2", "w + T^2"}, al);
  auto B = pencil_B1(al);
  auto sys = flow_system(al, "t", FLOW11);
  auto lhs = zero_curvature_residual(A + A2, B, sys, "t", 0);
  auto rhs = zero_curvature_residual(A, B, sys, "t", 0) + zero_curvature_residual(A2, B, sys, "t", 0);
  CHECK((lhs - rhs).is_zero());
}

TEST_CASE("extract_flow recovers the t and s flows") {
  auto al = lax_alphabet();
  auto A = pencil_A(al);
  auto f = extract_flow(A, pencil_B1(al), V6, 1);
  for (std::size_t i = 0; i < 6; ++i) CHECK(f[i] == parse_expr(FLOW11[i], al));
  auto g = extract_flow(A, pencil_B3(al), V6, 1);
  for (std::size_t i = 0; i < 6; ++i) CHECK(g[i] == parse_expr(FLOW15[i], al));
  // autonomous t-flow with alpha0 = eps2 - eps1
  auto h = extract_flow(A, pencil_B1(al), V6, 0);
  CHECK(h[0] == parse_expr("-2*x*p + eps1 - eps2", al));
  // fewer unknowns than the pencil needs
  CHECK_THROWS_AS(extract_flow(A, pencil_B1(al), {"x", "y"}, 1), std::runtime_error);
}

TEST_CASE("determinant expansion and named invariants") {
  auto al = lax_alphabet();
  auto inv = det_expansion(pencil_A(al));
  auto printed = parse_poly(
      "-64*T^5 - 32*T^4*(2*p^2 - q + w) - 8*T^3*(-2*q*w + x - y + 4*p*z) + 4*T^2*(q*x + w*y - z^2 - "
      "2*(eps1 - eps2)*p) + T*(x*y - 2*(eps1 - eps2)*z) + eps1*eps2",
      al);
  CHECK(coefficient_differences(inv.det, printed).empty());
  CHECK(inv.coefficients[5] == Polynomial(al, -64));
  CHECK(inv.reconstruct() == inv.det);
  CHECK(inv["K3"] == parse_poly("2*p^2 - q + w", al));
  CHECK(inv["K1"] == parse_poly("x*y - 2*(eps1 - eps2)*z", al));
  auto wrong = printed + parse_poly("T*x", al);
  auto d = coefficient_differences(inv.det, wrong);
  REQUIRE(d.size() == 1);
  CHECK(d[0] == "x*T: computed 0, printed 1");
}

TEST_CASE("affine matching and proportionality") {
  auto al = Alphabet::make({"a", "b", "k"});
  auto m = affine_match(parse_poly("2*a*b + 3*k + 7", al), parse_poly("a*b", al), {"a", "b"});
  REQUIRE(m);
  CHECK(m->scale == 2);
  CHECK(m->constant == parse_poly("3*k + 7", al));
  CHECK_FALSE(affine_match(parse_poly("a*b + a", al), parse_poly("a*b", al), {"a", "b"}));
  CHECK(proportional(parse_poly("-800*a + 400*b", al), parse_poly("2*a - b", al)) == BigRational(-400));
  CHECK_FALSE(proportional(parse_poly("a + b", al), parse_poly("a - b", al)));
}

TEST_CASE("surface from two integrals") {
  auto al = Alphabet::make({"q1", "p1", "q2", "p2", "alpha0", "alpha1", "K1", "K2"});
  auto f1 = parse_poly("q1^2*p1 + alpha0*q1 - q2^2/2 - p2^3 - 3/20*p2 + p1*p2 - K1", al);
  auto f2 = parse_poly(
      "p1^2/2 - 3/20*p1 - alpha1*q2 - p1*p2^2 + 2*q1^2*p1*p2 + 2*q1*p1*q2 + 2*alpha0*q1*p2 - K2", al);
  auto s = surface_from_integrals(f1, f2, "p1", {"q1", "q2", "p2"});
  CHECK(s.degree == 8);
  CHECK_FALSE(s.F.depends_on("p1"));
  // specialization commutes with elimination
  PolyBindings sp{{"alpha0", Polynomial(al, 0)}, {"K2", Polynomial(al, 0)}};
  auto s0 = surface_from_integrals(f1.substitute(sp), f2.substitute(sp), "p1", {"q1", "q2", "p2"});
  CHECK(proportional(s.F.substitute(sp), s0.F));
}
