#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcv::cli {

enum ExitCode : int { kPass = 0, kNumerical = 1, kPrecondition = 2, kIo = 3 };

/// Run the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcv::cli
