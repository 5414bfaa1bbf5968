#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace symsector::cli {

/// One CLI invocation. All randomized paths are reproducible from
/// (seed, config); reports are byte-identical modulo the timestamp field.
struct JobConfig {
  std::string command;  // check|factor|canon|sigma|dist|mobius|analyze|gen69|oracle
  std::string input;
  std::string output;             // empty = stdout
  std::string format = "json";    // json|csv (csv: analyze only)
  std::uint64_t seed = 0;
  int n_max = 0;                  // 0 = sequence length
  long samples = 0;               // oracle draws; 0 = skip band in `sigma`
  int horizon = 10000;            // gen69 criterion horizon
  double tol = 0.0;               // 0 = module default
  double growth_threshold = 10.0;
  bool timestamp = true;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConditioningStop = 3;

/// Runs one job; writes the report to config.output (or `out`) and returns
/// the process exit code. Validation and numeric preconditions map to exit 2
/// with a machine-readable {"error": ...} object on the report channel.
int run_command(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace symsector::cli
