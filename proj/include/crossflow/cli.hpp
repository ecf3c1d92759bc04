#pragma once

#include <iosfwd>

namespace crossflow::cli {

/// Entry point shared by the binary and the tests.
/// Subcommands: verify, flow, window.
/// Exit codes: 0 success, 1 certified violation or integration failure,
/// 2 configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crossflow::cli
