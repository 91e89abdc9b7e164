#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heis::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kDomain = 3;
inline constexpr int kPrecision = 4;

/// Runs one invocation. args[0] is the program name. Data goes to `out`,
/// diagnostics to `err`; `in` feeds subcommands that read standard input.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace heis::cli
