#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rotospin/config.hpp"

namespace rotospin::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSingular = 3,
  kExitValidation = 4,
};

/// Entry point shared by main() and the tests. `args` excludes the program
/// name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker threads for grid scans: hardware concurrency, capped by
/// ROTOSPIN_THREADS when set to a positive integer.
int thread_budget();

// Subcommands on fully merged settings. Each throws ConfigError or
// SingularResonance; run() maps those to exit codes.
int run_point(const KeyValueConfig& cfg, std::ostream& out, const std::string& format);
int run_scan(const KeyValueConfig& cfg, std::ostream& out);
int run_spectrum(const KeyValueConfig& cfg, std::ostream& out);
int run_spinup(const KeyValueConfig& cfg, std::ostream& out);
int run_thermal(const KeyValueConfig& cfg, std::ostream& out);
int run_amplify(const KeyValueConfig& cfg, std::ostream& out);
int run_validate(std::ostream& out);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// The invariant suite behind `rotospin validate`.
std::vector<CheckResult> validation_suite();

}  // namespace rotospin::cli
