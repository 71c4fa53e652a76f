#pragma once

#include <iosfwd>

namespace reig::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitAllFailed = 3,
};

/// Entry point of reig-lab; output that is not written to a file goes to `out`.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reig::cli
