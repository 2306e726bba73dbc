#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace revsec::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    success = 0,     // also: surface is quadric / section is central
    negative = 1,    // surface is not quadric / section is not central
    failure = 2,     // bad flags, parse or domain errors
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revsec::cli
