#pragma once

#include <iosfwd>

namespace splitlab::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,         // tolerance breach or false conclusion
    kUsage = 2,           // bad flags, parameters or inadmissible inputs
    kIo = 3,              // unreadable or malformed files
    kNonConvergence = 4,  // iteration or eigen/SVD solver did not settle
};

// Runs one command line; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splitlab::cli
