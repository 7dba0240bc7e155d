#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "weylham/catalog.hpp"
#include "weylham/expr.hpp"
#include "weylham/numerics.hpp"
#include "weylham/rational.hpp"

namespace weylham::cli {
namespace {

using nlohmann::json;

Catalog open_catalog(const Options& o) {
  return o.catalog.empty() ? Catalog::load_default() : Catalog::load(o.catalog);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    auto a = cur.find_first_not_of(" \t"), b = cur.find_last_not_of(" \t");
    out.push_back(a == std::string::npos ? "" : cur.substr(a, b - a + 1));
  }
  return out;
}

json entry_json(const CatalogEntry& e) {
  json j;
  j["id"] = e.id;
  j["kind"] = to_string(e.kind);
  j["anchor"] = {{"ref", e.anchor.ref}, {"quote", e.anchor.quote}, {"equations", e.anchor.equations}};
  if (e.derived) j["derived"] = true;
  if (!e.variant.empty()) j["variant"] = e.variant;
  if (!e.note.empty()) j["note"] = e.note;
  j["payload"] = e.payload;
  return j;
}

// the entry plus its canonical parsed form where there is one
json resolved_json(const Catalog& cat, const CatalogEntry& e) {
  json j = entry_json(e);
  if (cat.has_system(e.id)) j["canonical"] = system_to_json(cat.system(e.id));
  if (e.kind == EntryKind::map || e.kind == EntryKind::chart || e.kind == EntryKind::generator) {
    const auto& m = cat.map(e.id);
    json c;
    for (std::size_t i = 0; i < m.vars_out().size(); ++i) c[m.vars_out()[i]] = m.components()[i].to_string();
    j["canonical"] = {{"components", c}};
  }
  return j;
}

// label -> expression text, for every first integral the catalog attaches to a system
std::vector<std::pair<std::string, std::string>> first_integrals(const Catalog& cat, const std::string& sys_id) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string ham;
  const auto& e = cat.at(sys_id);
  if (e.kind == EntryKind::hamiltonian) ham = sys_id;
  if (e.kind == EntryKind::system && e.payload.contains("hamiltonian")) ham = e.payload.at("hamiltonian");
  std::set<std::string> seen;
  for (const auto& x : cat.entries())
    if (x.kind == EntryKind::integral && x.payload.value("system", "") == sys_id) {
      auto expr = x.payload.at("expression").get<std::string>();
      if (seen.insert(expr).second) out.emplace_back(x.id, expr);
    }
  if (!ham.empty())
    for (auto& [k, h] : cat.hamiltonian(ham).hamiltonians)
      if (seen.insert(h.to_string()).second) out.emplace_back("H_" + k, h.to_string());
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace

double parse_number(const std::string& s) {
  if (s.find('/') != std::string::npos) return to_double(parse_rational(s));
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

int cmd_list(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    validate_glob(o.filter);
    Catalog cat = open_catalog(o);
    if (!o.kind.empty()) entry_kind_from_string(o.kind);
    for (const auto& e : cat.entries()) {
      if (!o.kind.empty() && to_string(e.kind) != o.kind) continue;
      if (!claim_matches(o.filter, e.id)) continue;
      out << std::left << std::setw(34) << e.id << std::setw(12) << to_string(e.kind) << e.anchor.ref;
      if (!e.variant.empty()) out << " [" << e.variant << "]";
      out << "\n";
    }
    return ok;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return bad_input;
  }
}

int cmd_show(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    Catalog cat = open_catalog(o);
    const auto* e = cat.find(o.id);
    if (!e) {
      err << "error: no entry '" << o.id << "'\n";
      return bad_input;
    }
    out << resolved_json(cat, *e).dump(2) << "\n";
    return ok;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return bad_input;
  }
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<VerificationReport> rows;
  try {
    validate_glob(o.filter);
    Catalog cat = open_catalog(o);
    rows = run_claims(cat, o.filter, o.jobs);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return bad_input;
  }
  if (rows.empty()) err << "warning: no claim matches '" << o.filter << "'\n";
  json report = json::array();
  for (auto& r : rows) report.push_back(r.to_json());
  std::size_t passed = 0;
  for (auto& r : rows) passed += r.passed();
  if (o.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    for (auto& r : rows) {
      out << (r.passed() ? "PASS " : "FAIL ") << r.claim_id << "  [" << r.anchor << "]  " << r.residual_summary << "  ("
          << r.millis << " ms)\n";
    }
    out << passed << "/" << rows.size() << " claims passed\n";
  }
  if (!o.out.empty()) {
    try {
      write_file(o.out, report.dump(2) + "\n");
    } catch (const std::exception& ex) {
      err << "error: " << ex.what() << "\n";
      return bad_input;
    }
  }
  return passed == rows.size() ? ok : failed;
}

int cmd_integrate(const Options& o, std::ostream& out, std::ostream& err) {
  std::unique_ptr<CompiledSystem> cs;
  std::string time;
  std::vector<double> init;
  double a = 0, b = 0;
  IntegrateOptions opt;
  std::vector<std::pair<std::string, RationalFunction>> quantities;
  try {
    Catalog cat = open_catalog(o);
    if (!cat.has_system(o.id)) throw std::invalid_argument("no system '" + o.id + "'");
    TotalSystem sys = cat.system(o.id);
    Values params;
    if (!o.params.empty())
      for (auto& kv : split(o.params, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--params wants name=value, got '" + kv + "'");
        params[kv.substr(0, eq)] = parse_number(kv.substr(eq + 1));
      }
    for (auto& x : split(o.init, ',')) init.push_back(parse_number(x));
    if (init.size() != sys.variables().size())
      throw std::invalid_argument("--init has " + std::to_string(init.size()) + " values, system has " +
                                  std::to_string(sys.variables().size()) + " variables");
    auto sp = split(o.span, ',');
    if (sp.size() != 2) throw std::invalid_argument("--span wants A,B");
    a = parse_number(sp[0]);
    b = parse_number(sp[1]);
    opt.tol = parse_number(o.tol);
    if (!(opt.tol > 0)) throw std::invalid_argument("--tol must be positive");
    time = o.time.empty() ? sys.times().at(0) : o.time;
    if (!sys.has_time(time)) throw std::invalid_argument("system has no time '" + time + "'");
    // integrals may mention symbols the flows do not
    std::vector<std::string> extra;
    auto ints = first_integrals(cat, o.id);
    for (auto& [l, text] : ints)
      for (auto& s : expr_symbols(text))
        if (!sys.alphabet()->contains(s)) extra.push_back(s);
    if (!extra.empty()) sys = sys.rebased(sys.alphabet()->extended(extra));
    cs = std::make_unique<CompiledSystem>(sys, params);
    for (auto& [l, text] : ints) {
      auto f = parse_expr(text, sys.alphabet());
      bool dup = false;
      for (auto& [l2, g] : quantities) dup = dup || (f - g).is_zero();
      if (!dup) quantities.emplace_back(l, f);
    }
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return bad_input;
  }

  Trajectory tr;
  int code = ok;
  try {
    tr = integrate_flow(*cs, time, init, a, b, opt);
  } catch (const IntegrationError& ex) {
    err << "integration stopped: " << ex.what() << "\n";
    tr = ex.partial();
    code = failed;
  }
  tr.system_id = o.id;

  json drift_rows = json::array();
  std::vector<DriftReport> drifts;
  for (auto& [name, q] : quantities) {
    try {
      drifts.push_back(drift(*cs, tr, name, q));
    } catch (const std::exception& ex) {
      err << "warning: drift of " << name << ": " << ex.what() << "\n";
    }
  }
  if (o.format == "json") {
    for (auto& d : drifts)
      drift_rows.push_back({{"quantity", d.quantity}, {"initial", d.initial}, {"max_abs", d.max_abs},
                            {"max_rel", d.max_rel}});
    json j = {{"system", o.id}, {"time", time}, {"steps", tr.grid.size()}, {"drift", drift_rows}};
    if (!tr.states.empty()) j["final"] = tr.states.back();
    out << j.dump(2) << "\n";
  } else {
    out << o.id << " along " << time << ": " << tr.grid.size() << " points";
    if (!tr.grid.empty()) out << ", " << time << " = " << format_double(tr.grid.front()) << " .. "
                              << format_double(tr.grid.back());
    out << "\n";
    if (drifts.empty()) out << "no first integrals registered for " << o.id << "\n";
    for (auto& d : drifts)
      out << "  drift " << d.quantity << ": initial " << format_double(d.initial) << ", max abs "
          << format_double(d.max_abs) << ", max rel " << format_double(d.max_rel) << "\n";
  }
  if (!o.out.empty()) {
    try {
      bool csv = o.out.size() >= 4 && o.out.substr(o.out.size() - 4) == ".csv";
      write_file(o.out, csv ? tr.to_csv() : tr.to_json());
    } catch (const std::exception& ex) {
      err << "error: " << ex.what() << "\n";
      return bad_input;
    }
  }
  return code;
}

int cmd_export(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    Catalog cat = open_catalog(o);
    json j;
    if (o.id.empty()) {
      j = {{"format", "weylham-catalog"}, {"version", 1}, {"entries", json::array()}};
      for (auto& e : cat.entries()) j["entries"].push_back(entry_json(e));
    } else {
      const auto* e = cat.find(o.id);
      if (!e) throw std::invalid_argument("no entry '" + o.id + "'");
      j = resolved_json(cat, *e);
    }
    if (o.out.empty())
      out << j.dump(2) << "\n";
    else
      write_file(o.out, j.dump(2) + "\n");
    return ok;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return bad_input;
  }
}

}  // namespace weylham::cli
