#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace retrodict::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kContractViolation = 1, kInputError = 2 };

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out` unless --out names a directory; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace retrodict::cli
