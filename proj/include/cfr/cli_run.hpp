#pragma once

#include <iosfwd>

// Command-line front end. Kept out of main() so the test suite can drive the
// real argument parsing and output formatting in process.
//
// Exit codes: 0 success, 1 usage or domain errors, 2 convergence/divergence
// failures, 3 verification-suite failure.

namespace cfr::cli {

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

} // namespace cfr::cli
