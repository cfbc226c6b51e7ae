#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bdh::cli {

/// Exit status contract of the command-line tool.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs the tool with argv[1..] in `args`. Artifacts without an --output
/// path go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bdh::cli
