#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyplap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCondition = 3;
inline constexpr int kExitNumeric = 4;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyplap::cli
