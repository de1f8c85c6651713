#pragma once

#include <ostream>

namespace siclab {

/// Exit codes: 0 success, 1 test or search failure, 2 malformed input.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace siclab
