#pragma once

// Command-line front end. `run_cli` is the whole program minus argv handling,
// so tests can drive it with in-memory streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace lagpot::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name. Output goes to `out` unless --out names a
/// file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lagpot::cli
