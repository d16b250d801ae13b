#pragma once

#include <stdexcept>
#include <string>

namespace cfr {

// Adaptive integration ran out of subdivisions before meeting tolerance.
// Carries the best estimate so callers can decide whether to accept it.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), err_estimate(err) {}
    double best_estimate;
    double err_estimate;
};

// A functional integral diverges (or behaves divergently) for the requested
// parameters, e.g. a non-integrable density node at small lambda.
class divergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A closed-form path does not cover the requested parameters.
class unsupported_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace cfr
