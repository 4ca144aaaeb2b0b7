#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tbsg::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,         // bad flags, unreadable files, malformed documents
    kInvalidGame = 2,        // game or generator spec violates an invariant
    kNotConverged = 3,       // value iteration hit its iteration cap
    kGuardExceeded = 4,      // brute force refused: too many profiles
    kNumericalStall = 5,     // float strategy iteration failed to improve
    kCheckFailed = 6,        // a requested verification did not pass
    kInternalError = 7,
};

/// Runs the `tbsg` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tbsg::cli
