#pragma once

#include <iosfwd>

namespace eigenflat::cli {

/// Exit codes: 0 success, 2 invalid input, 3 node budget exhausted,
/// 4 an internal cross-check failed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eigenflat::cli
