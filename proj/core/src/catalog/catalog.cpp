#include "weylham/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "weylham/expr.hpp"

namespace weylham {

namespace detail {
std::string_view embedded_catalog_text();
}

namespace {

using nlohmann::json;

const std::vector<std::pair<EntryKind, std::string>>& kind_names() {
  static const std::vector<std::pair<EntryKind, std::string>> k = {
      {EntryKind::system, "system"},     {EntryKind::hamiltonian, "hamiltonian"},
      {EntryKind::map, "map"},           {EntryKind::chart, "chart"},
      {EntryKind::generator, "generator"}, {EntryKind::pencil, "pencil"},
      {EntryKind::integral, "integral"}, {EntryKind::solution, "solution"},
      {EntryKind::relation, "relation"}, {EntryKind::claim, "claim"}};
  return k;
}

std::vector<std::string> strings(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  for (auto& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

std::map<std::string, std::string> string_map(const json& j, const char* key) {
  std::map<std::string, std::string> out;
  if (!j.contains(key)) return out;
  for (auto& [k, v] : j.at(key).items()) out[k] = v.get<std::string>();
  return out;
}

// every symbol named by the expressions, in first-seen order
void add_symbols(std::vector<std::string>& out, const std::string& text) {
  for (auto& s : expr_symbols(text))
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

bool is_reference(const std::string& s) {
  static const std::regex re(R"(^(inv:)?(sys|ham|map|chart|gen|pencil|int|sol|rel)\.[A-Za-z0-9_.\-]+$)");
  return std::regex_match(s, re);
}

void collect_references(const json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (is_reference(s)) out.push_back(s.rfind("inv:", 0) == 0 ? s.substr(4) : s);
  } else if (j.is_array() || j.is_object()) {
    for (auto& v : j) collect_references(v, out);
  }
}

std::string describe(const CatalogEntry& e) { return "entry '" + e.id + "' (" + to_string(e.kind) + ")"; }

}  // namespace

std::string to_string(EntryKind k) {
  for (auto& [kk, n] : kind_names())
    if (kk == k) return n;
  return "?";
}

EntryKind entry_kind_from_string(const std::string& s) {
  for (auto& [k, n] : kind_names())
    if (n == s) return k;
  throw CatalogError("unknown entry kind '" + s + "'");
}

TotalSystem system_from_json(const json& j) {
  auto vars = strings(j, "variables");
  auto times = strings(j, "times");
  if (vars.empty() || times.empty()) throw std::invalid_argument("system needs variables and times");
  std::map<std::string, std::vector<std::string>> flows;
  for (auto& tau : times) {
    const json& f = j.at("flows").at(tau);
    std::vector<std::string> comps;
    for (auto& v : vars) {
      if (!f.contains(v)) throw std::invalid_argument("flow '" + tau + "' has no component for " + v);
      comps.push_back(f.at(v).get<std::string>());
    }
    if (f.size() != vars.size()) throw std::invalid_argument("flow '" + tau + "' names an undeclared variable");
    flows[tau] = std::move(comps);
  }
  if (j.at("flows").size() != times.size()) throw std::invalid_argument("flows and times disagree");
  return TotalSystem(vars, times, flows, string_map(j, "constraints"), strings(j, "parameters"));
}

json system_to_json(const TotalSystem& s) {
  json j;
  j["variables"] = s.variables();
  j["times"] = s.times();
  for (auto& tau : s.times()) {
    const auto& f = s.flow(tau);
    for (std::size_t i = 0; i < f.size(); ++i) j["flows"][tau][s.variables()[i]] = f[i].to_string();
  }
  json c = json::object();
  for (auto& [k, v] : s.constraints()) c[k] = v.to_string();
  j["constraints"] = c;
  return j;
}

HamiltonianSpec hamiltonian_from_json(const json& j, TotalSystem* induced) {
  HamiltonianSpec spec;
  std::vector<std::string> names;
  for (auto& pr : j.at("pairs")) {
    spec.pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
    names.push_back(spec.pairs.back().first);
    names.push_back(spec.pairs.back().second);
  }
  auto times = strings(j, "times");
  for (auto& t : times) names.push_back(t);
  auto cons = string_map(j, "constraints");
  for (auto& [k, v] : j.at("hamiltonians").items()) add_symbols(names, v.get<std::string>());
  for (auto& [k, v] : cons) {
    names.push_back(k);
    add_symbols(names, v);
  }
  std::vector<std::string> uniq;
  for (auto& n : names)
    if (std::find(uniq.begin(), uniq.end(), n) == uniq.end()) uniq.push_back(n);
  auto al = Alphabet::make(uniq);
  for (auto& [k, v] : j.at("hamiltonians").items()) spec.hamiltonians[k] = parse_poly(v.get<std::string>(), al);
  if (induced) {
    PolyBindings c;
    for (auto& [k, v] : cons) c[k] = parse_poly(v, al);
    for (auto& t : times)
      if (!spec.hamiltonians.count(t)) throw std::invalid_argument("no Hamiltonian for time " + t);
    *induced = hamiltonian_system(spec, times, c);
  }
  return spec;
}

BirationalMap map_from_json(const json& j) {
  auto in = strings(j, "vars_in");
  auto out = strings(j, "vars_out");
  const json& comps = j.at("components");
  std::vector<std::string> c;
  for (auto& v : out) c.push_back(comps.at(v).get<std::string>());
  if (comps.size() != out.size()) throw std::invalid_argument("components do not match vars_out");
  std::optional<std::vector<std::string>> inv;
  if (j.contains("inverse")) {
    inv.emplace();
    for (auto& v : in) inv->push_back(j.at("inverse").at(v).get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> aux;
  if (j.contains("auxiliaries"))
    for (auto& a : j.at("auxiliaries")) aux.emplace_back(a.at(0).get<std::string>(), a.at(1).get<std::string>());
  std::vector<std::string> extra = strings(j, "times");
  for (auto& [k, v] : string_map(j, "constraints")) {
    extra.push_back(k);
    add_symbols(extra, v);
  }
  return BirationalMap(in, out, c, string_map(j, "param_map"), inv, extra, aux);
}

MatrixPencil pencil_from_json(const json& j) {
  std::string spectral = j.value("spectral", "T");
  std::array<std::string, 4> grid;
  const json& g = j.at("grid");
  if (g.size() != 2 || g.at(0).size() != 2 || g.at(1).size() != 2) throw std::invalid_argument("pencil grid must be 2x2");
  std::vector<std::string> names{spectral};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      grid[static_cast<std::size_t>(2 * i + k)] = g.at(i).at(k).get<std::string>();
      add_symbols(names, grid[static_cast<std::size_t>(2 * i + k)]);
    }
  for (auto& v : strings(j, "parameters")) add_symbols(names, v);
  auto P = MatrixPencil::parse(grid, Alphabet::make(names), spectral);
  std::string sign = j.value("sign", "as_is");
  if (sign == "negated") return -P;
  if (sign != "as_is") throw std::invalid_argument("pencil sign must be 'negated' or 'as_is'");
  return P;
}

Catalog Catalog::parse(std::string_view text, const std::string& origin) {
  Catalog c;
  c.origin_ = origin;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CatalogError(origin + ": parse error: " + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != "weylham-catalog")
      throw CatalogError(origin + ": not a weylham catalog (missing \"format\": \"weylham-catalog\")");
    if (doc.value("version", 0) != 1) throw CatalogError(origin + ": unsupported catalog version");
    for (auto& e : doc.at("entries")) {
      CatalogEntry ce;
      ce.id = e.at("id").get<std::string>();
      ce.kind = entry_kind_from_string(e.at("kind").get<std::string>());
      if (e.contains("anchor")) {
        const json& a = e.at("anchor");
        ce.anchor.ref = a.value("ref", "");
        ce.anchor.quote = a.value("quote", "");
        if (a.contains("equations")) ce.anchor.equations = a.at("equations").get<std::vector<int>>();
      }
      ce.derived = e.value("derived", false);
      ce.variant = e.value("variant", "");
      ce.note = e.value("note", "");
      ce.payload = e.at("payload");
      if (c.index_.count(ce.id)) throw CatalogError(origin + ": duplicate id '" + ce.id + "'");
      c.index_[ce.id] = c.entries_.size();
      c.entries_.push_back(std::move(ce));
    }
  } catch (const json::exception& e) {
    throw CatalogError(origin + ": malformed catalog: " + e.what());
  }
  c.build();
  return c;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::string_view Catalog::embedded_text() { return detail::embedded_catalog_text(); }

Catalog Catalog::load_default() { return parse(embedded_text(), "<embedded catalog>"); }

void Catalog::build() {
  for (auto& e : entries_) {
    try {
      switch (e.kind) {
        case EntryKind::system:
          if (e.payload.contains("hamiltonian")) {
            // the flow of an earlier Hamiltonian entry under its own id
            auto src = e.payload.at("hamiltonian").get<std::string>();
            auto it = systems_.find(src);
            if (it == systems_.end() || !hamiltonians_.count(src))
              throw CatalogError("hamiltonian '" + src + "' must precede this entry");
            systems_.emplace(e.id, it->second);
          } else {
            systems_.emplace(e.id, system_from_json(e.payload));
          }
          break;
        case EntryKind::hamiltonian: {
          TotalSystem s;
          hamiltonians_.emplace(e.id, hamiltonian_from_json(e.payload, &s));
          systems_.emplace(e.id, std::move(s));
          break;
        }
        case EntryKind::map:
        case EntryKind::chart:
        case EntryKind::generator: {
          auto m = map_from_json(e.payload);
          if (m.inverse()) {
            PolyBindings cons;
            for (auto& [k, v] : string_map(e.payload, "constraints")) cons[k] = parse_poly(v, m.alphabet());
            auto inv = m.inverted();
            // one-sided inverses hold only on a level set and are checked by a claim
            auto there = composition_identity_residual(m, inv, cons);
            if (!all_zero(there)) throw CatalogError("registered inverse fails map(inverse(x)) = x: " + summarize(there));
            if (!e.payload.value("inverse_one_sided", false)) {
              auto back = composition_identity_residual(inv, m, cons);
              if (!all_zero(back))
                throw CatalogError("registered inverse fails inverse(map(x)) = x: " + summarize(back));
            }
          }
          maps_.emplace(e.id, std::move(m));
          break;
        }
        case EntryKind::pencil:
          pencils_.emplace(e.id, pencil_from_json(e.payload));
          break;
        case EntryKind::relation:
          relations_.emplace(e.id, ScalarODE::from_json(e.payload));
          break;
        case EntryKind::integral:
          if (!e.payload.contains("system") || !e.payload.contains("expression"))
            throw CatalogError("integral needs 'system' and 'expression'");
          break;
        case EntryKind::solution:
          if (!e.payload.contains("system")) throw CatalogError("solution needs 'system'");
          break;
        case EntryKind::claim:
          if (!e.payload.contains("check")) throw CatalogError("claim needs 'check'");
          break;
      }
    } catch (const CatalogError& err) {
      throw CatalogError(origin_ + ": " + describe(e) + ": " + err.what());
    } catch (const std::exception& err) {
      throw CatalogError(origin_ + ": " + describe(e) + ": invalid payload: " + err.what());
    }
  }
  for (auto& e : entries_) {
    std::vector<std::string> refs;
    collect_references(e.payload, refs);
    for (auto& r : refs)
      if (!index_.count(r)) throw CatalogError(origin_ + ": " + describe(e) + " references unknown id '" + r + "'");
  }
  validate_claims();
}

void Catalog::validate_claims() const {
  auto known = known_checks();
  std::set<std::string> names(known.begin(), known.end());
  for (auto& e : entries_) {
    if (e.kind != EntryKind::claim) continue;
    auto check = e.payload.at("check").get<std::string>();
    if (!names.count(check)) throw CatalogError(origin_ + ": " + describe(e) + ": unknown check '" + check + "'");
  }
}

const CatalogEntry* Catalog::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const CatalogEntry& Catalog::at(const std::string& id) const {
  auto p = find(id);
  if (!p) throw std::out_of_range("no catalog entry '" + id + "'");
  return *p;
}

std::vector<std::string> Catalog::claim_ids() const {
  std::vector<std::string> out;
  for (auto& e : entries_)
    if (e.kind == EntryKind::claim) out.push_back(e.id);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& id, const char* what) {
  auto it = m.find(id);
  if (it == m.end()) throw std::out_of_range(std::string("no ") + what + " '" + id + "' in the catalog");
  return it->second;
}
}  // namespace

const TotalSystem& Catalog::system(const std::string& id) const { return lookup(systems_, id, "system"); }
const HamiltonianSpec& Catalog::hamiltonian(const std::string& id) const {
  return lookup(hamiltonians_, id, "hamiltonian");
}
const BirationalMap& Catalog::map(const std::string& id) const { return lookup(maps_, id, "map"); }
const MatrixPencil& Catalog::pencil(const std::string& id) const { return lookup(pencils_, id, "pencil"); }
const ScalarODE& Catalog::relation(const std::string& id) const { return lookup(relations_, id, "relation"); }

std::vector<int> Catalog::covered_equations() const {
  std::set<int> s;
  for (auto& e : entries_) s.insert(e.anchor.equations.begin(), e.anchor.equations.end());
  return {s.begin(), s.end()};
}

json VerificationReport::to_json() const {
  return json{{"claim_id", claim_id},
              {"anchor", anchor},
              {"status", status},
              {"residual_summary", residual_summary},
              {"millis", millis}};
}

VerificationReport VerificationReport::from_json(const json& j) {
  VerificationReport r;
  r.claim_id = j.at("claim_id").get<std::string>();
  r.anchor = j.at("anchor").get<std::string>();
  r.status = j.at("status").get<std::string>();
  if (r.status != "pass" && r.status != "fail") throw std::invalid_argument("status must be pass or fail");
  r.residual_summary = j.at("residual_summary").get<std::string>();
  r.millis = j.at("millis").get<long long>();
  return r;
}

}  // namespace weylham
