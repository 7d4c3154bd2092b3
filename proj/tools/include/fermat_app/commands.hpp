#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fermat/error.hpp"

namespace fermat::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitResourceGuard = 4;

int exit_code_for(ErrorCode code);

/// Runs the `fermat` command line (args excludes the program name). JSON goes
/// to `out`, diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermat::app
