#pragma once

#include <string>
#include <vector>

// Property suites exercising the library's mathematical guarantees end to
// end: sharpness of the lower bound, invariances, monotonicity laws, and
// closed-form/quadrature agreement. Shared by the `verify` CLI command and
// the acceptance runner.

namespace cfr::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured numbers, worst offenders
};

struct SuiteResult {
    std::string name;
    std::vector<CheckResult> checks;
    bool pass() const;
};

// Suites in execution order: bounds, hydrogenic, scaling, replication,
// rearrangement, near-continuity.
std::vector<std::string> suite_names();

// Runs one suite by name; throws std::domain_error for an unknown name.
SuiteResult run_suite(const std::string& name);

// Runs every suite in order.
std::vector<SuiteResult> run_all();

} // namespace cfr::verify
