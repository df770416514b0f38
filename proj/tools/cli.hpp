#pragma once

#include <iosfwd>

namespace hierpart::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 2;
inline constexpr int kInfeasible = 3;
inline constexpr int kIoFailure = 4;

/// Runs the command line; never throws. Returns one of the exit codes above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hierpart::cli
