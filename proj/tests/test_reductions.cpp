#include <doctest.h>

#include "weylham/dynsys.hpp"
#include "weylham/expr.hpp"
#include "weylham/maps.hpp"
#include "weylham/reductions.hpp"

using namespace weylham;

namespace {

const std::vector<std::string> TS{"t", "s"};

// four-dimensional system whose t-flow is a jet tower of the fourth-order equation
TotalSystem system_xyzw() {
  return TotalSystem({"x", "y", "z", "w"}, TS,
                     {{"t", {"y", "z", "w", "10*x*y^2 + 10*x^2*z - 6*x^5 - 3/10*x + alpha0"}},
                      {"s",
                       {"w - 6*x^2*y", "4*x^2*z - 2*x*y^2 - 6*x^5 - 3/10*x + alpha0",
                        "-30*x^4*y - 2*y^3 + 4*x*y*z + 4*x^2*w - 3/10*y",
                        "-24*x^7 + 10*x^4*z - 80*x^3*y^2 + 12*x*y*w - 2*y^2*z + 4*x*z^2 - 6/5*x^3 + 4*alpha0*x^2 - "
                        "3/10*z"}}});
}

ScalarODE u_eq(const std::string& text) { return ScalarODE::parse({"u"}, TS, text); }

}  // namespace

TEST_CASE("jet names") {
  CHECK(jet_name("u", {2, 1}, TS) == "u_tts");
  CHECK(jet_name("u", {0, 0}, TS) == "u");
  auto j = parse_jet("u1_tts", {"u1", "v1"}, TS);
  REQUIRE(j);
  CHECK(j->unknown == "u1");
  CHECK(j->order == std::vector<unsigned>{2, 1});
  CHECK_FALSE(parse_jet("alpha0", {"u"}, TS));
  CHECK_THROWS_AS(parse_jet("u_st", {"u"}, TS), std::invalid_argument);
  CHECK_THROWS_AS(ScalarODE::parse({"u"}, {"tt"}, "u_tt = 0"), std::invalid_argument);
}

TEST_CASE("total derivative adds the explicit term") {
  auto o = u_eq("u_tt = 2*u^3 + t*u + alpha");
  auto d = total_derivative(o, "t");
  CHECK(same_relation(d, u_eq("u_ttt = 6*u^2*u_t + u + t*u_t")));
  CHECK(o.highest_order() == 2);
  CHECK(d.highest_order() == 3);
}

TEST_CASE("tower reduction gives the fourth-order equation and mKdV") {
  auto sys = system_xyzw();
  CHECK(all_zero(compatibility_residual(sys, "t", "s")));
  auto red = jet_reduce(sys, {{"u", "x"}, {"u_t", "y"}, {"u_tt", "z"}, {"u_ttt", "w"}}, {"u"});
  REQUIRE(red.count("u_tttt"));
  REQUIRE(red.count("u_s"));
  CHECK(same_relation(red.at("u_tttt"),
                      u_eq("u_tttt = 10*u*u_t^2 + 10*u^2*u_tt - 6*u^5 - 3/10*u + alpha0")));
  CHECK(same_relation(red.at("u_s"), u_eq("u_s = u_ttt - 6*u^2*u_t")));

  // the duplicated term breaks compatibility
  auto bad = TotalSystem({"x", "y", "z", "w"}, TS,
                         {{"t", {"y", "z", "w", "10*x*y^2 + 10*x^2*z - 6*x^5 - 3/10*x + alpha0"}},
                          {"s",
                           {"w - 6*x^2*y", "4*x^2*z - 2*x*y^2 - 6*x^5 - 3/10*x + alpha0",
                            "-30*x^4*y - 2*y^3 + 4*x*y*z + 4*x^2*w - 3/10*y",
                            "-24*x^7 + 20*x^4*z - 80*x^3*y^2 + 12*x*y*w - 2*y^2*z + 4*x*z^2 - 6/5*x^3 + "
                            "4*alpha0*x^2 - 3/10*z"}}});
  CHECK_FALSE(all_zero(compatibility_residual(bad, "t", "s")));
}

TEST_CASE("tower violations and missing jets are reported") {
  auto sys = system_xyzw();
  CHECK_THROWS_AS(jet_reduce(sys, {{"u", "x"}, {"u_t", "z"}}, {"u"}), std::runtime_error);
  CHECK_THROWS_AS(jet_reduce(sys, {{"u", "x"}}, {"u"}), std::runtime_error);
  CHECK_THROWS_AS(jet_reduce(sys, {{"u", "x"}, {"u_t", "x"}}, {"u"}), std::invalid_argument);
}

TEST_CASE("trivial flow reduces to a vanishing derivative") {
  TotalSystem sys({"x"}, {"t"}, {{"t", {"0"}}});
  auto red = jet_reduce(sys, {{"u", "x"}}, {"u"});
  REQUIRE(red.count("u_t"));
  CHECK(same_relation(red.at("u_t"), ScalarODE::parse({"u"}, {"t"}, "u_t = 0")));
}

TEST_CASE("differentiating and adding flows") {
  auto p4 = u_eq("u_tttt = 10*u*u_t^2 + 10*u^2*u_tt - 6*u^5 - 3/10*u + alpha0");
  auto mkdv = u_eq("u_s = u_ttt - 6*u^2*u_t");
  auto fifth = combine_flows({p4, mkdv}, {{0, "1", "t"}, {1, "-1", ""}});
  CHECK(same_relation(fifth, u_eq("u_ttttt = 10*(u^2 - 1/10)*u_ttt + 40*u*u_t*u_tt + 10*u_t^3 - "
                                   "30*(u^2 - 1/10)^2*u_t + u_s")));

  auto p2 = u_eq("u_tt = 2*u^3 - u - alpha");
  auto wave = u_eq("u_s = u_t");
  auto third = combine_flows({p2, wave}, {{0, "1", "t"}, {1, "1", ""}});
  CHECK(same_relation(third, u_eq("u_ttt = 6*u^2*u_t - u_s")));
  CHECK_THROWS_AS(combine_flows({p2}, {{3, "1", ""}}), std::out_of_range);
}

TEST_CASE("traveling wave reduction and integrating once") {
  auto member = ScalarODE::parse({"U"}, TS, "U_s = 3*U_t*(U_t - alpha0)*(U_t + alpha0)/(2*U^2) - 3/U*U_t*U_tt + U_ttt");
  CHECK_FALSE(member.cleared_factor.is_constant());
  auto tw = traveling_wave_reduce(member, "c", "T", "U");
  auto printed = ScalarODE::parse(
      {"U"}, {"T"}, "c*U_T = 3*U_T*(U_T - alpha0)*(U_T + alpha0)/(2*U^2) - 3/U*U_T*U_TT + U_TTT");
  CHECK(same_relation(tw, printed));

  auto once = ScalarODE::parse({"U"}, {"T"}, "U_TT = 3/(2*U)*U_T^2 - 3*alpha0^2/(2*U) + c*U");
  // stored relation R = U*E, E the uncleared form; d/dT R - (U_T/U) R = U * dE/dT
  CHECK(once.cleared_factor.to_string() == "U");
  auto back = combine_flows({once}, {{0, "1", "T"}, {0, "-U_T/U", ""}});
  CHECK(same_relation(back, printed));
  // with R3 = U^3*E the weight of the correction is 3
  auto cubed = ScalarODE::parse({"U"}, {"T"}, "U^3*(U_TT - 3/(2*U)*U_T^2 + 3*alpha0^2/(2*U) - c*U)");
  auto back3 = combine_flows({cubed}, {{0, "1", "T"}, {0, "-3*U_T/U", ""}});
  CHECK(same_relation(back3, printed));

  auto explicit_t = u_eq("u_s = t*u_t");
  CHECK_THROWS_AS(traveling_wave_reduce(explicit_t, "c", "T", "U"), std::invalid_argument);
}

TEST_CASE("weighted homogeneity") {
  auto member = ScalarODE::parse({"U"}, TS,
                                 "U_s = 3*U_t*(U_t - alpha0)*(U_t + alpha0)/(2*U^2) - 3/U*U_t*U_tt + U_ttt");
  std::map<std::string, BigRational> w{{"U", 1}, {"d/t", 1}, {"d/s", 3}, {"alpha0", 2}};
  auto r = homogeneity_check(member, w);
  CHECK(r.homogeneous);
  CHECK(r.weight == 6);  // degree 4 after dividing by U^2

  std::map<std::string, BigRational> w2{{"u2", 1}, {"v2", 3}, {"d/t", 1}, {"d/s", 3}};
  auto first = ScalarODE::parse({"u2", "v2"}, TS, "u2_s = 2*u2_t^2 - 2*u2^2*u2_t + v2_t + 2*u2*v2");
  auto r2 = homogeneity_check(first, w2);
  CHECK(r2.homogeneous);
  CHECK(r2.weight == 4);
  w2["alpha0"] = 2;
  auto second = ScalarODE::parse({"u2", "v2"}, TS,
                                 "v2_s = -3/10*u2_t - 6*u2_t^3 + 3/5*u2^2 + 24*u2^2*u2_t^2 - 30*u2^4*u2_t + "
                                 "12*u2^6 - 2*v2_t*u2_t + 4*u2^2*v2_t + 2*alpha0*u2");
  auto r3 = homogeneity_check(second, w2);
  CHECK_FALSE(r3.homogeneous);
  CHECK_FALSE(r3.offending.empty());
  CHECK_THROWS_AS(homogeneity_check(u_eq("u_t = beta*u"), {{"u", 1}, {"d/t", 1}}), std::invalid_argument);
}

TEST_CASE("specializing the non-autonomous member") {
  auto eq = u_eq("u_tttt = 10*u*u_t^2 + 10*u^2*u_tt + 2*(C1 - 3*s)*u^3 - 6*u^5 + 1/2*(-3*s^2 + 2*C1*s + 2*t + "
                 "C1^2 - 2*C2)*u - (C1 - 3*s)*u_tt - alpha0 + 1/2");
  auto sp = specialize(eq, {{"s", "0"}, {"C1", "0"}, {"C2", "0"}, {"alpha0", "1/2 - alpha2"}});
  CHECK(same_relation(sp, u_eq("u_tttt = 10*u*u_t^2 + 10*u^2*u_tt - 6*u^5 + t*u + alpha2")));
  auto wrong = specialize(eq, {{"s", "0"}, {"C1", "0"}, {"C2", "0"}});
  CHECK_FALSE(same_relation(wrong, u_eq("u_tttt = 10*u*u_t^2 + 10*u^2*u_tt - 6*u^5 + t*u + alpha2")));
}

TEST_CASE("two-unknown reduction through a birational change") {
  auto al = Alphabet::make({"q1", "p1", "q2", "p2", "alpha0", "alpha1", "t", "s"});
  HamiltonianSpec spec{
      {{"q1", "p1"}, {"q2", "p2"}},
      {{"t", parse_poly("q1^2*p1 + alpha0*q1 - q2^2/2 - p2^3 - 3/20*p2 + p1*p2", al)},
       {"s", parse_poly("p1^2/2 - 3/20*p1 - alpha1*q2 - p1*p2^2 + 2*q1^2*p1*p2 + 2*q1*p1*q2 + 2*alpha0*q1*p2", al)}}};
  auto sys = hamiltonian_system(spec, TS, {{"alpha1", parse_poly("-alpha0", al)}});
  BirationalMap m({"q1", "p1", "q2", "p2"}, {"x4", "y4", "z4", "w4"},
                  {"q1", "p1 - 3*p2^2 - 3/20", "q2", "p2 + q1^2"}, {},
                  std::vector<std::string>{"x4", "y4 + 3*(w4 - x4^2)^2 + 3/20", "z4", "w4 - x4^2"});
  auto pushed = pushforward_system(m, sys);
  auto red = jet_reduce(pushed, {{"u2", "x4"}, {"u2_t", "w4"}, {"v2", "z4"}, {"v2_t", "y4"}}, {"u2", "v2"});
  std::vector<std::string> U{"u2", "v2"};
  REQUIRE(red.count("u2_tt"));
  REQUIRE(red.count("v2_tt"));
  REQUIRE(red.count("u2_s"));
  REQUIRE(red.count("v2_s"));
  CHECK(same_relation(red.at("u2_tt"), ScalarODE::parse(U, TS, "u2_tt = v2 + 2*u2*u2_t")));
  CHECK(same_relation(red.at("v2_tt"),
                      ScalarODE::parse(U, TS,
                                       "v2_tt = -3/10*u2 - 6*u2*u2_t^2 + 12*u2^3*u2_t - 6*u2^5 - 2*u2*v2_t - "
                                       "6*v2*u2_t + 6*u2^2*v2 - alpha0")));
  CHECK(same_relation(red.at("u2_s"),
                      ScalarODE::parse(U, TS, "u2_s = 2*u2_t^2 - 2*u2^2*u2_t + v2_t + 2*u2*v2")));
  CHECK(same_relation(red.at("v2_s"),
                      ScalarODE::parse(U, TS,
                                       "v2_s = -3/10*u2_t - 6*u2_t^3 + 3/5*u2^2 + 24*u2^2*u2_t^2 - "
                                       "30*u2^4*u2_t + 12*u2^6 - 2*v2_t*u2_t + 4*u2^2*v2_t + 2*alpha0*u2")));
}

TEST_CASE("json round trip") {
  auto o = u_eq("u_tt = 2*u^3 - u - alpha");
  auto j = o.to_json();
  auto back = ScalarODE::from_json(j);
  CHECK(same_relation(o, back));
}
