#pragma once

#include <iosfwd>

namespace shiftlab::cli {

/// Exit codes: 0 success, 1 verdict or construction failure, 2 invalid input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shiftlab::cli
