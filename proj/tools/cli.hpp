#pragma once

#include <iosfwd>

namespace flatq::cli {

/// Entry point shared by the executable and the tests.
/// Exit codes: 0 success, 1 IO error, 2 parse, validation or construction error
/// (and, for `verify`, a failing check).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flatq::cli
