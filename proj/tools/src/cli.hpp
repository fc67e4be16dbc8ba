#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace derham::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kParseError = 2, kIoError = 3 };

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Runs `derham-lft` with the arguments after the program name. Reports go to
/// `out` (or to --out), diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace derham::cli
