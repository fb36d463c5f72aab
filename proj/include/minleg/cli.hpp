#pragma once

#include <iosfwd>

namespace minleg {

/// Command-line entry point. Exit codes: 0 success, 1 verification failure,
/// 2 usage error. Reports go to `out` (or to --out files), errors to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minleg
