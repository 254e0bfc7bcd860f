#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mahonian::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Runs one command.  `args` excludes the program name.  Reports go to
/// `out`, usage and diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace mahonian::cli
