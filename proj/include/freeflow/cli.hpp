#pragma once

#include <iosfwd>

namespace freeflow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInternal = 2;
inline constexpr int kExitUsage = 64;

/// Runs one `freeflow` command line. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace freeflow
