#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"weylham: exact checks for polynomial Hamiltonian systems and their symmetries"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  weylham::cli::Options o;
  app.add_option("--catalog", o.catalog, "catalog JSON (default: $WEYLHAM_CATALOG, then the built-in catalog)");

  auto* list = app.add_subcommand("list", "list catalog entries");
  list->add_option("--kind", o.kind, "only entries of this kind");
  list->add_option("--filter", o.filter, "ID glob");

  auto* show = app.add_subcommand("show", "print one entry");
  show->add_option("id", o.id)->required();

  auto* verify = app.add_subcommand("verify", "run claims");
  verify->add_option("--filter", o.filter, "claim ID glob");
  verify->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", o.out, "also write the JSON report here");

  auto* integ = app.add_subcommand("integrate", "integrate one flow and report drift of the first integrals");
  integ->add_option("system", o.id)->required();
  integ->add_option("--time", o.time, "flow to follow (default: the first time)");
  integ->add_option("--init", o.init, "initial state, comma separated")->required();
  integ->add_option("--params", o.params, "parameter values, name=value comma separated");
  integ->add_option("--span", o.span, "A,B");
  integ->add_option("--tol", o.tol, "local error tolerance");
  integ->add_option("--out", o.out, "trajectory file (.csv or .json)");
  integ->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto* exp = app.add_subcommand("export", "write an entry, or the whole catalog, as JSON");
  exp->add_option("id", o.id, "entry ID; omit for the whole catalog");
  exp->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (o.catalog.empty())
    if (const char* env = std::getenv("WEYLHAM_CATALOG"); env && *env) o.catalog = env;

  namespace c = weylham::cli;
  if (*list) return c::cmd_list(o, std::cout, std::cerr);
  if (*show) return c::cmd_show(o, std::cout, std::cerr);
  if (*verify) return c::cmd_verify(o, std::cout, std::cerr);
  if (*integ) return c::cmd_integrate(o, std::cout, std::cerr);
  return c::cmd_export(o, std::cout, std::cerr);
}
