#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlab {

// Dispatches one command line (without the program name). Returns 0 on
// success, 1 on a domain error (with a machine-readable {"error", "detail"}
// object on out), 2 on a usage error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qlab
