#pragma once
// qwsearch command line: spectrum, cascade, synthesize, simulate, sweep.

#include <iosfwd>
#include <string>
#include <vector>

namespace qws::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kInfeasible = 3, kSolver = 4 };

// argv[0] is the program name. JSON/CSV go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SweepRow {
  std::string family;
  std::string params;
  int n = 0;
  int depth = 0;
  int oracle_queries = 0;
  double reference_bound = 0.0;
  double success_probability = 0.0;
  double wall_time_ms = 0.0;
};

std::string csv_header();
std::string to_csv(const SweepRow& row);

// Least-squares slope of log(oracle_queries) against log(N).
double loglog_slope(const std::vector<SweepRow>& rows);

}  // namespace qws::cli
