#pragma once

#include <iosfwd>

namespace gopprre::cli {

enum ExitStatus { kOk = 0, kFindings = 1, kUsage = 2 };

/// Runs one command line. Primary output goes to `out` (or the --out file),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gopprre::cli
