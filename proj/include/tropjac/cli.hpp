#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropjac::cli {

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns 0 on success, 2 for malformed input and
/// 3 for precondition violations.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropjac::cli
