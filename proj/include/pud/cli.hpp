#pragma once

#include <iosfwd>

namespace pud {

// Entry point of the `pud` tool, separated from main() so tests can drive it.
// Returns the process exit status: 0 ok, 1 usage, 2 data, 3 numerical.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pud
