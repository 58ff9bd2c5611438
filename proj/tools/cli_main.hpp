#pragma once

#include <iosfwd>

namespace offpol {

/// Full CLI entry point: parses flags, dispatches run/analyze/sweep/describe,
/// maps failures to exit codes (0 success, 2 config error, 3 coverage
/// violation, 1 anything else). Streams are injectable for tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace offpol
