#pragma once

#include <ostream>

namespace harvest::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitNoHarvesting = 4,
  kExitNoCrossover = 5,
  kExitBracketing = 6,
  kExitNonConvergence = 7,
  kExitInternal = 8,
};

// Whole command line in, exit code out. Results go to `out` (or the --out
// file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Worker count after applying the HARVEST_MAX_THREADS cap; 0 requests
// hardware concurrency.
unsigned resolve_threads(unsigned requested);

}  // namespace harvest::cli
