#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minkspec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns 0, 2 (bad input) or 3 (numerical failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minkspec
