#pragma once

#include <ostream>
#include <string>

namespace weylham::cli {

// exit codes
constexpr int ok = 0;
constexpr int failed = 1;    // a claim failed, or integration stopped early
constexpr int bad_input = 2; // catalog, glob, or argument errors

struct Options {
  std::string catalog;  // empty: built-in
  std::string filter = "*";
  std::string kind;
  std::string id;
  unsigned jobs = 1;
  std::string format = "text";
  std::string out;
  std::string time;
  std::string init;
  std::string params;
  std::string span = "0,1";
  std::string tol = "1e-10";
};

int cmd_list(const Options& o, std::ostream& out, std::ostream& err);
int cmd_show(const Options& o, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& o, std::ostream& out, std::ostream& err);
int cmd_integrate(const Options& o, std::ostream& out, std::ostream& err);
int cmd_export(const Options& o, std::ostream& out, std::ostream& err);

// decimal or "num/den"
double parse_number(const std::string& s);

}  // namespace weylham::cli
