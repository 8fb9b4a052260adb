#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uclosed::cli {

// Exit codes shared by every subcommand.
inline constexpr int kPass = 0;      // verdict positive / something found
inline constexpr int kNegative = 1;  // legitimate negative answer
inline constexpr int kUsage = 2;     // bad flags or unreadable input
inline constexpr int kGuard = 3;     // request outside the exhaustive regime
inline constexpr int kInternal = 4;  // a built-in self-check failed

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace uclosed::cli
