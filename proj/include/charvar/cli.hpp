#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace charvar {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
/// analyze: a hypothesis failed (report still written);
/// verify: some check failed (report still written).
inline constexpr int kExitHypothesis = 2;

/// Runs the tool on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charvar
