#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dimbound::cli {

/// Exit codes: 0 success or verdict true, 1 domain failure / verdict false /
/// bad arguments, 2 I/O or parse failure.
enum ExitCode : int { kOk = 0, kFailure = 1, kIoError = 2 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dimbound::cli
