#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace arithfrac::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kPropertyViolated = 1,
  kUsageError = 2,
  kBudgetExceeded = 3,
};

/// Environment variable consulted for the default --workers value.
inline constexpr const char* kWorkersEnv = "ARITHFRAC_WORKERS";

/// Runs one subcommand; `args` excludes the program name. Reports go to
/// `out` (or --output), machine-readable error objects to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace arithfrac::cli
