#include <doctest.h>

#include <regex>
#include <set>

#include "weylham/catalog.hpp"

using namespace weylham;
using nlohmann::json;

namespace {

json tiny_catalog() {
  return json::parse(R"({
    "format": "weylham-catalog", "version": 1,
    "entries": [
      {"id": "sys.a", "kind": "system", "anchor": {"ref": "x", "equations": [1]},
       "payload": {"variables": ["q", "p"], "times": ["t"],
                   "flows": {"t": {"q": "p", "p": "-q"}}}},
      {"id": "int.a", "kind": "integral", "anchor": {"ref": "x", "equations": [2]},
       "payload": {"system": "sys.a", "expression": "q^2 + p^2"}},
      {"id": "c/energy", "kind": "claim", "anchor": {"ref": "x", "equations": [2]},
       "payload": {"check": "conserved", "integrals": ["int.a"]}},
      {"id": "c/wrong", "kind": "claim", "anchor": {"ref": "x", "equations": [1]},
       "payload": {"check": "conserved", "system": "sys.a", "expressions": ["q*p"]}}
    ]})");
}

}  // namespace

TEST_CASE("built-in catalog loads with unique ids and resolvable references") {
  auto cat = Catalog::load_default();
  std::set<std::string> ids;
  for (auto& e : cat.entries()) CHECK(ids.insert(e.id).second);
  CHECK(cat.entries().size() > 250);
  CHECK(cat.has_system("sys.1"));
  CHECK(cat.has_system("sys.29"));
  CHECK(cat.hamiltonian("ham.30").pairs.size() == 2);
  CHECK(cat.map("gen.thm12.pi").vars_out().size() == 6);
  CHECK(cat.claim_ids().size() > 150);
  auto cov = cat.covered_equations();
  CHECK(std::set<int>(cov.begin(), cov.end()).size() == 126);
}

TEST_CASE("variants come in verbatim and corrected pairs") {
  auto cat = Catalog::load_default();
  for (auto& e : cat.entries())
    if (e.variant == "corrected") {
      auto base = std::regex_replace(e.id, std::regex("\\.corrected$"), "");
      const auto* v = cat.find(base);
      REQUIRE_MESSAGE(v, e.id);
      CHECK(v->variant == "verbatim");
    }
}

TEST_CASE("small catalog: pass, fail, and deterministic ordering") {
  auto cat = Catalog::parse(tiny_catalog().dump());
  auto rows = run_claims(cat, "*", 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].claim_id == "c/energy");
  CHECK(rows[0].passed());
  CHECK(rows[1].claim_id == "c/wrong");
  CHECK_FALSE(rows[1].passed());
  // a bare prefix selects the claims below it
  CHECK(run_claims(cat, "c", 1).size() == 2);
  CHECK(run_claims(cat, "nothing*", 1).empty());
}

TEST_CASE("report rows round-trip through JSON") {
  auto cat = Catalog::parse(tiny_catalog().dump());
  for (auto& r : run_claims(cat, "*", 1)) {
    auto back = VerificationReport::from_json(r.to_json());
    CHECK(back.claim_id == r.claim_id);
    CHECK(back.status == r.status);
    CHECK(back.anchor == r.anchor);
    CHECK(back.residual_summary == r.residual_summary);
  }
}

TEST_CASE("load errors name the offending entry") {
  auto j = tiny_catalog();
  SUBCASE("dangling reference") {
    j["entries"][2]["payload"]["integrals"] = json::array({"int.missing"});
    CHECK_THROWS_AS(Catalog::parse(j.dump()), CatalogError);
  }
  SUBCASE("duplicate id") {
    j["entries"].push_back(j["entries"][0]);
    CHECK_THROWS_AS(Catalog::parse(j.dump()), CatalogError);
  }
  SUBCASE("unparsable flow") {
    j["entries"][0]["payload"]["flows"]["t"]["q"] = "p +* q";
    CHECK_THROWS_AS(Catalog::parse(j.dump()), CatalogError);
  }
  SUBCASE("flow count disagrees with times") {
    j["entries"][0]["payload"]["times"] = json::array({"t", "s"});
    CHECK_THROWS_AS(Catalog::parse(j.dump()), CatalogError);
  }
  SUBCASE("not json") { CHECK_THROWS_AS(Catalog::parse("{"), CatalogError); }
}

TEST_CASE("a registered inverse that does not invert is rejected") {
  auto j = tiny_catalog();
  j["entries"].push_back(json::parse(R"({"id": "map.bad", "kind": "map", "anchor": {"ref": "x", "equations": []},
    "payload": {"vars_in": ["q", "p"], "vars_out": ["a", "b"], "components": {"a": "q + p", "b": "p"},
                "inverse": {"q": "a", "p": "b"}}})"));
  CHECK_THROWS_AS(Catalog::parse(j.dump()), CatalogError);
  j["entries"].back()["payload"]["inverse"] = {{"q", "a - b"}, {"p", "b"}};
  CHECK_NOTHROW(Catalog::parse(j.dump()));
}

TEST_CASE("claim glob") {
  CHECK(claim_matches("thm-1.2", "thm-1.2/s0"));
  CHECK_FALSE(claim_matches("thm-1.2", "thm-1.2-weyl"));
  CHECK(claim_matches("thm-1.2*", "thm-1.2-weyl"));
  CHECK(claim_matches("prop-5.?/s[01]", "prop-5.4/s1"));
  CHECK_FALSE(claim_matches("prop-5.?/s[01]", "prop-5.4/pi"));
  CHECK_THROWS_AS(validate_glob("[abc"), std::invalid_argument);
}

TEST_CASE("a few catalog claims end to end") {
  auto cat = Catalog::load_default();
  for (auto& r : run_claims(cat, "thm-1.2*", 1)) {
    std::string what = r.claim_id + ": " + r.residual_summary;
    CHECK_MESSAGE(r.passed(), what);
  }
  for (auto& r : run_claims(cat, "eq-88", 1)) CHECK_MESSAGE(r.passed(), r.residual_summary);
}
