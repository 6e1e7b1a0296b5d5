#pragma once

#include <iostream>

namespace skewtent::cli {

// Runs one subcommand. Exit codes: 0 success, 2 validation error, 3 solver
// failure. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace skewtent::cli
