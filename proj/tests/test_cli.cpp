#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace weylham::cli;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("weylham_test_" + name)).string();
}

}  // namespace

TEST_CASE("verify exit codes") {
  Options o;
  std::ostringstream out, err;
  o.filter = "prop-5.*";
  CHECK(cmd_verify(o, out, err) == ok);

  o.filter = "no-such-*";
  out.str(""), err.str("");
  CHECK(cmd_verify(o, out, err) == ok);
  CHECK(err.str().find("warning") != std::string::npos);

  o.filter = "[oops";
  CHECK(cmd_verify(o, out, err) == bad_input);

  auto path = temp_path("corrupt.json");
  std::ofstream(path) << R"({"format": "weylham-catalog", "version": 1, "entries": [{"id": "x"}]})";
  o.filter = "*";
  o.catalog = path;
  CHECK(cmd_verify(o, out, err) == bad_input);
  std::remove(path.c_str());
}

TEST_CASE("a failing claim gives exit 1") {
  auto path = temp_path("failing.json");
  std::ofstream(path) << R"({"format": "weylham-catalog", "version": 1, "entries": [
    {"id": "sys.a", "kind": "system", "anchor": {"ref": "x", "equations": []},
     "payload": {"variables": ["q", "p"], "times": ["t"], "flows": {"t": {"q": "p", "p": "q"}}}},
    {"id": "c", "kind": "claim", "anchor": {"ref": "x", "equations": []},
     "payload": {"check": "conserved", "system": "sys.a", "expressions": ["q^2 + p^2"]}}]})";
  Options o;
  o.catalog = path;
  std::ostringstream out, err;
  CHECK(cmd_verify(o, out, err) == failed);
  CHECK(out.str().find("FAIL c") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("json report is an array of report rows") {
  Options o;
  o.filter = "thm-1.1/*";
  o.format = "json";
  o.jobs = 2;
  std::ostringstream out, err;
  REQUIRE(cmd_verify(o, out, err) == ok);
  auto j = json::parse(out.str());
  REQUIRE(j.is_array());
  REQUIRE(j.size() >= 5);
  for (std::size_t i = 1; i < j.size(); ++i) CHECK(j[i - 1]["claim_id"] < j[i]["claim_id"]);
  for (auto& r : j) CHECK(r["status"] == "pass");
}

TEST_CASE("integrate") {
  Options o;
  o.id = "sys.29";
  o.time = "t";
  o.init = "0.1,0.1,0.1,0.1";
  o.params = "alpha0=3/10";
  o.span = "0,1";
  o.tol = "1e-12";
  o.format = "json";
  std::ostringstream out, err;

  SUBCASE("drift report for both Hamiltonians") {
    REQUIRE(cmd_integrate(o, out, err) == ok);
    auto j = json::parse(out.str());
    REQUIRE(j["drift"].size() == 2);
    for (auto& d : j["drift"]) CHECK(d["max_rel"].get<double>() < 1e-9);
  }
  SUBCASE("zero-length span gives one row") {
    o.span = "0.5,0.5";
    auto path = temp_path("one.csv");
    o.out = path;
    REQUIRE(cmd_integrate(o, out, err) == ok);
    std::ifstream f(path);
    std::string line;
    int rows = 0;
    while (std::getline(f, line)) ++rows;
    CHECK(rows == 2);  // header plus one state
    std::remove(path.c_str());
  }
  SUBCASE("a fixed point stays put") {
    o.init = "0,3/20,0,0";
    o.params = "alpha0=0";
    o.span = "0,2";
    REQUIRE(cmd_integrate(o, out, err) == ok);
    auto fin = json::parse(out.str())["final"];
    CHECK(fin[1].get<double>() == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(std::abs(fin[0].get<double>()) < 1e-12);
  }
  SUBCASE("dimension mismatch") {
    o.init = "0.1,0.1";
    CHECK(cmd_integrate(o, out, err) == bad_input);
  }
  SUBCASE("unknown system") {
    o.id = "sys.none";
    CHECK(cmd_integrate(o, out, err) == bad_input);
  }
  SUBCASE("pole crossing stops with partial output") {
    // q' = q^2 blows up at t = 1 from q = 1
    auto path = temp_path("pole.json");
    std::ofstream(path) << R"({"format": "weylham-catalog", "version": 1, "entries": [
      {"id": "sys.blow", "kind": "system", "anchor": {"ref": "x", "equations": []},
       "payload": {"variables": ["q"], "times": ["t"], "flows": {"t": {"q": "q^2"}}}}]})";
    o.catalog = path;
    o.id = "sys.blow";
    o.init = "1";
    o.params = "";
    o.span = "0,2";
    o.tol = "1e-8";
    CHECK(cmd_integrate(o, out, err) == failed);
    std::remove(path.c_str());
  }
}

TEST_CASE("numbers") {
  CHECK(parse_number("3/20") == doctest::Approx(0.15));
  CHECK(parse_number("-1e-3") == doctest::Approx(-0.001));
  CHECK_THROWS(parse_number("1.5x"));
}

TEST_CASE("export and show") {
  Options o;
  o.id = "gen.thm12.s0";
  std::ostringstream out, err;
  REQUIRE(cmd_export(o, out, err) == ok);
  auto j = json::parse(out.str());
  CHECK(j["kind"] == "generator");
  CHECK(j["canonical"]["components"].contains("p"));
  o.id = "nope";
  CHECK(cmd_show(o, out, err) == bad_input);
}
