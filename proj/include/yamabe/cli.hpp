#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace yamabe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitAccuracy = 3;
inline constexpr int kExitUsage = 64;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace yamabe::cli
