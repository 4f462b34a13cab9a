#pragma once

#include <ostream>

namespace qfront::cli {

/// Runs the `qfront` command line. Returns the process exit code:
/// 0 completed, 1 failed check or invalid input, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfront::cli
