#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace celestial {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitGeometry = 2, kExitAborted = 3 };

/// Runs one command line; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace celestial
