#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trollrole::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

// Entry point behind the `trollrole` executable. `args` excludes the program
// name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace trollrole::cli
