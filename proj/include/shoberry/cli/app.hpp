#pragma once

#include <iosfwd>

namespace shoberry::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitCheckFailed = 1,  // validate found a failing check, or an unclassified internal error
  kExitValidation = 2,
  kExitUndefined = 3,
  kExitConvergence = 4,
};

/// Parses arguments, runs one subcommand and writes its table to the
/// configured destination (`out` when no path is given). Diagnostics go to
/// `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shoberry::cli
