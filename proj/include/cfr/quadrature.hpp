#pragma once

#include <functional>
#include <vector>

// Deterministic adaptive Gauss-Kronrod (G7/K15) integration. Every closed
// form in the library is validated against this module, so it depends on
// nothing but the standard library and refines by repeatable bisection of
// the worst-error segment.

namespace cfr::quadrature {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    // Interior points where the integrand is singular, kinked, or merely
    // nasty; the domain is pre-split there before adaptation starts.
    std::vector<double> breakpoints;
};

struct QuadratureResult {
    double value = 0.0;
    double err_estimate = 0.0;
};

using Integrand = std::function<double(double)>;

// Integral over the finite interval [a, b], a < b. Breakpoints outside
// (a, b) are ignored. Throws cfr::convergence_error when max_subdivisions
// is exhausted before the tolerance max(abs_tol, rel_tol*|value|) is met.
QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureSpec& spec = {});

// Integral over [0, inf) via the substitution x = t/(1-t). Breakpoints are
// given in x-coordinates.
QuadratureResult integrate_semi_infinite(const Integrand& f,
                                         const QuadratureSpec& spec = {});

} // namespace cfr::quadrature
