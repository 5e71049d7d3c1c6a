#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bellscope::cli {

inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNegative = 3;

/// Runs one invocation. `args` excludes the program name. The JSON report
/// goes to `out` (or to the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

}  // namespace bellscope::cli
