#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmorris::cli {

/// Exit codes of run().
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one verification subcommand. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace qmorris::cli
