#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fiberlab {

/// Exit statuses of the command-line front end.
enum ExitStatus : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

/// Runs one command line (without the program name). Artifacts go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace fiberlab
