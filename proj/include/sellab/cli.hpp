#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sellab {

/// Runs one CLI invocation; args excludes the program name.
/// Subcommands: mp, cheb, select, experiment, validate, list.
/// Returns 0 on success, 1 on a failed verdict or numerical failure, 2 on input error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sellab
