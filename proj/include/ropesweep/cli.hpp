#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ropesweep {

/// Runs the ropesweep command line. Returns 0 on success, 2 on invalid input
/// and 3 on numerical failure; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ropesweep
