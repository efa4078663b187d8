#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permpfa::cli {

/// Runs one invocation. argv[0] is the program name. Returns the exit code:
/// 0 on success (and for --help), 2 for usage errors, 1 for library errors
/// and failed verifications. Diagnostics are single lines on `err`.
int run(int argc, const char* const argv[], std::istream& in,
        std::ostream& out, std::ostream& err);

/// Same, with args not including the program name.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace permpfa::cli
