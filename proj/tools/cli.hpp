#pragma once

#include <iosfwd>

namespace ndmm::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation or evaluation failure
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitIoError = 74;

/// Runs the ndmm command line. Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ndmm::cli
