#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qent/sweeps.hpp"

namespace qent {

// Invalid flags/values; mapped to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Command {
  help,
  measure,
  classical,
  sweep,
  extrapolate,
  additivity,
  oracle_check,
};

struct RunConfig {
  Command command = Command::help;
  Statistics stats = Statistics::classical;

  // Geometry: either explicit site counts or ratio form.
  long sites = 0;
  bool ratio_form = true;
  long len_a = 0, gap = 0, len_b = 0;
  double x1 = 0.0, x2 = 0.0, y = 0.0;

  StateSpec state;                               // measure / sweep / extrapolate
  std::vector<std::vector<MomentumTerm>> parts;  // additivity

  SweepParameter parameter = SweepParameter::x2;
  std::vector<double> values;
  std::vector<long> ladder;
  double bound = 0.05;      // additivity PASS bound (nats)
  double tolerance = 1e-8;  // oracle-check tolerance

  std::string out_path;  // empty: write to stdout
  std::string format = "json";
};

// Strict parsing; throws UsageError on invalid flags/values. --help prints
// usage and yields Command::help.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes a config. Returns 0 on success, 1 when a verification command
// fails or a numerical invariant is violated.
int run(const RunConfig& config);

// parse + run with exit-code mapping (2 usage, 1 runtime failure).
int cli_main(int argc, const char* const* argv);

}  // namespace qent
