#pragma once

#include <iosfwd>

namespace rismux {

/// Entry point of the `rismux` tool. Exit codes: 0 success, 1 runtime or I/O
/// failure, 2 invalid configuration or usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rismux
