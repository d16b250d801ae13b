#pragma once

#include <optional>
#include <string>

#include "cfr/functionals.hpp"

// The composite measure C = D^{-1} F_lambda N_lambda: dimensionless,
// scale/translation invariant, and >= 1 with equality exactly on the
// generalized Gaussian family.

namespace cfr::complexity {

using densities::Density;
using functionals::LambdaParam;
using quadrature::QuadratureSpec;

enum class Method { analytic, quadrature, both };

// Exact value of F_lambda * N_lambda on the minimizing generalized Gaussian;
// dividing by it pins the global lower bound of C at 1. lambda = 1 gives
// 2 pi d e.
double normalization_constant(const LambdaParam& lam);

struct ComplexityReport {
    double lambda = 0.0;
    int dim = 0;
    double fisher_lambda = 0.0;
    double renyi_power = 0.0;
    double d_norm = 0.0;
    double cfr = 0.0;
    std::string method;                 // "analytic" | "quadrature" | "both"
    std::optional<double> discrepancy;  // relative gap when both paths ran
    double err_estimate = 0.0;
};

// Deterministic 12-significant-digit rendering used by every serializer.
std::string format_number(double v);
// Flat JSON object with stable key order and format_number values.
std::string to_json(const ComplexityReport& report);

// C for an arbitrary structured density, by quadrature.
ComplexityReport cfr_complexity(const Density& rho, const LambdaParam& lam,
                                const QuadratureSpec& spec = {});

// Classical companions. Cramer-Rao F * V is 1 on Gaussians; Fisher-Shannon
// F * exp(2S/d) is 2 pi e d on Gaussians and equals D_1 * C at lambda = 1.
double cramer_rao(const Density& rho, const QuadratureSpec& spec = {});
double fisher_shannon(const Density& rho, const QuadratureSpec& spec = {});

} // namespace cfr::complexity
