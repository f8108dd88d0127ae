#pragma once
#include <iosfwd>

namespace xyqpt::cli {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, ConfigError = 2, NotConverged = 3 };

/// Entry point of the `xyqpt` tool; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace xyqpt::cli
