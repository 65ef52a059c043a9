#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fisherrao::cli {

enum ExitCode : int { kOk = 0, kInternalError = 1, kInputError = 2, kNumericalFailure = 3 };

enum class LogLevel : int { kQuiet = 0, kError = 1, kWarn = 2, kInfo = 3, kDebug = 4 };

/// Reads FISHERRAO_LOG (quiet, error, warn, info, debug or 0-4); warn when unset.
LogLevel log_level_from_env();

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        LogLevel level = LogLevel::kWarn);

}  // namespace fisherrao::cli
