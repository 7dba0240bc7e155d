#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "weylham/dynsys.hpp"
#include "weylham/lax.hpp"
#include "weylham/maps.hpp"
#include "weylham/reductions.hpp"

namespace weylham {

// Load and validation failures; the message names the entry and the rule.
class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EntryKind { system, hamiltonian, map, chart, generator, pencil, integral, solution, relation, claim };
std::string to_string(EntryKind k);
EntryKind entry_kind_from_string(const std::string& s);

struct Anchor {
  std::string ref;    // section label in the source text
  std::string quote;  // verbatim fragment of the source text
  std::vector<int> equations;
};

struct CatalogEntry {
  std::string id;
  EntryKind kind = EntryKind::system;
  Anchor anchor;
  bool derived = false;   // computed form, not printed in the source
  std::string variant;    // "verbatim" or "corrected" for suspected misprints
  std::string note;
  nlohmann::json payload;
};

class Catalog {
 public:
  static Catalog parse(std::string_view text, const std::string& origin = "<memory>");
  static Catalog load(const std::filesystem::path& path);
  // the catalog compiled into the library
  static Catalog load_default();
  static std::string_view embedded_text();

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(const std::string& id) const;
  const CatalogEntry& at(const std::string& id) const;  // throws std::out_of_range
  std::vector<std::string> claim_ids() const;           // sorted
  const std::string& origin() const { return origin_; }

  // typed payloads; hamiltonian entries also answer system()
  const TotalSystem& system(const std::string& id) const;
  const HamiltonianSpec& hamiltonian(const std::string& id) const;
  const BirationalMap& map(const std::string& id) const;
  const MatrixPencil& pencil(const std::string& id) const;
  const ScalarODE& relation(const std::string& id) const;
  bool has_system(const std::string& id) const { return systems_.count(id) > 0; }

  // every equation number named by an entry or claim anchor
  std::vector<int> covered_equations() const;

 private:
  void build();
  void validate_claims() const;

  std::string origin_;
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, TotalSystem> systems_;
  std::map<std::string, HamiltonianSpec> hamiltonians_;
  std::map<std::string, BirationalMap> maps_;
  std::map<std::string, MatrixPencil> pencils_;
  std::map<std::string, ScalarODE> relations_;
};

// JSON payload readers shared by the loader and the claim runner
TotalSystem system_from_json(const nlohmann::json& j);
HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j, TotalSystem* induced = nullptr);
BirationalMap map_from_json(const nlohmann::json& j);
MatrixPencil pencil_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const TotalSystem& s);

struct VerificationReport {
  std::string claim_id, anchor, status, residual_summary;
  long long millis = 0;

  bool passed() const { return status == "pass"; }
  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
};

// Claim-ID glob: '*', '?', and [...] classes. A pattern without a '/' also
// matches every claim below it ("thm-1.2" selects "thm-1.2/s0").
bool claim_matches(const std::string& pattern, const std::string& claim_id);
// throws std::invalid_argument on an unbalanced class
void validate_glob(const std::string& pattern);

// Runs the matching claims on up to `jobs` threads. Failures are report rows,
// never exceptions. Rows come back sorted by claim ID.
std::vector<VerificationReport> run_claims(const Catalog& catalog, const std::string& filter = "*",
                                           unsigned jobs = 1);

// names of the checks a claim payload may use
std::vector<std::string> known_checks();

}  // namespace weylham
