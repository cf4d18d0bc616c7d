#pragma once

#include <iosfwd>

namespace massqd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;

// Entry point of the massqd tool. Diagnostics go to `err`; results are only
// written to files.
int run_cli(int argc, const char* const* argv, std::ostream& err);

}  // namespace massqd
