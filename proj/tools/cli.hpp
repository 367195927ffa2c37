#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfcme::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kNumericError = 3,
  kBoundFailure = 4,
};

/// Default upper limit on m; --allow-large-m lifts it.
inline constexpr int kMaxDefaultM = 5000;

/// Runs one invocation. args excludes the program name. Data goes to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pfcme::cli
