#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fairc {

// Exit codes of the command-line front end.
inline constexpr int kExitHolds = 0;       // property holds / witness found
inline constexpr int kExitFails = 1;       // property fails / no completion exists
inline constexpr int kExitInputError = 2;  // malformed input or usage
inline constexpr int kExitSkipped = 3;     // not applicable or over budget

// Runs one command. `args` excludes the program name, e.g.
// {"solve", "--property", "mms", "--instance", "x.json"}.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairc
