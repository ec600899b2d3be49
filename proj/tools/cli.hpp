#pragma once

#include <iosfwd>

namespace llfp::cli {

/// Exit codes: 0 success, 1 validation or comparison failure, 2 usage or I/O.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// Runs one `llfp` command line; all output goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace llfp::cli
