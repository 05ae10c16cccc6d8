#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace powsum::cli {

enum ExitCode : int { success = 0, assertion_failed = 1, usage_error = 2 };

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Normal output goes to `out`, diagnostics to `err`.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace powsum::cli
