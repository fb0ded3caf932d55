// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace emcap::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kNoConvergence = 3,
};

/// Parses and runs one `emcap` invocation. CSV goes to --output (written
/// atomically) or to `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with args[0] as the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip-safe decimal form with 17 significant digits;
/// "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

}  // namespace emcap::cli
