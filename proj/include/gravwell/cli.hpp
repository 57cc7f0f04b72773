#pragma once

namespace gravwell {

/// Full command-line entry point (also driven directly by the test suite).
/// Exit codes: 0 success, 1 configuration error, 2 numeric failure.
int run_cli(int argc, const char* const* argv);

}  // namespace gravwell
