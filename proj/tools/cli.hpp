#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace refinemon::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kFormat = 2, kInternal = 3 };

/// Runs the refinemon command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refinemon::cli
