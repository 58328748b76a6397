#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace modlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerifyFail = 3;

/// Runs the driver on `args` (without the program name). Summaries go to
/// `out`, diagnostics to `err`. Returns the process exit code.
[[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out,
                      std::ostream& err);

}  // namespace modlab::cli
