#pragma once

#include <ostream>

namespace badapprox::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitUsage = 64;

/// Parses argv, runs one subcommand and writes its report to `out` (or to --out).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace badapprox::cli
