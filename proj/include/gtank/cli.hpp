#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a verification found a mismatch
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitBudget = 3;

/// Runs the command line `args` (program name excluded). JSON goes to `out`,
/// diagnostics to `err`. Returns the process exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtank::cli
