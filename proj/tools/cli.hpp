#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinring::cli {

inline constexpr const char* kSchemaVersion = "1";

/// Exit codes: 0 success / verified, 1 negative mathematical verdict,
/// 2 usage error.
enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2 };

/// Runs the command line `args` (args[0] is the program name). Documents
/// go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinring::cli
