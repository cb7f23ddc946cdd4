#pragma once

#include <ostream>

namespace gengm::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitCapacity = 4,
};

/// Parses argv, runs one subcommand and maps errors to exit codes. Progress
/// goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gengm::cli
