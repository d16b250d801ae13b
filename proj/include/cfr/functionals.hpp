#pragma once

#include "cfr/density.hpp"
#include "cfr/quadrature.hpp"

// Entropic and gradient functionals of a density, each reduced to
// one-dimensional quadrature through the structure of the Density (line,
// radial, or separable). Integrands of the form rho^p |grad rho|^q are
// evaluated in log space with the continuous extension by zero at rho = 0.

namespace cfr::functionals {

using densities::Density;
using quadrature::QuadratureSpec;

// Deformation parameter lambda attached to a dimension. Inadmissible values
// (lambda <= max{(d-1)/d, d/(d+2)}) are rejected at construction.
struct LambdaParam {
    double value;
    int dim;

    LambdaParam(double value, int dim);
    static double lower_bound(int dim);
    double mu() const;             // 2 + dim*(value - 1)
    bool shannon_limit() const;    // value == 1
};

struct FunctionalValue {
    double value = 0.0;
    double err_estimate = 0.0;  // propagated quadrature estimate
};

// Total mass of the density.
FunctionalValue normalization(const Density& rho, const QuadratureSpec& spec = {});

// Renyi entropy R_p = ln(int rho^p) / (1 - p) for p > 0; p = 1 returns the
// Shannon entropy (the continuous limit).
FunctionalValue renyi_entropy(const Density& rho, double p,
                              const QuadratureSpec& spec = {});

// Shannon entropy -int rho ln rho.
FunctionalValue shannon_entropy(const Density& rho,
                                const QuadratureSpec& spec = {});

// Renyi entropy power N_lambda = (int rho^lambda)^{(mu/d)/(1-lambda)};
// at lambda = 1 it is exp((2/d) S).
FunctionalValue renyi_power(const Density& rho, const LambdaParam& lam,
                            const QuadratureSpec& spec = {});

// Standard Fisher information int |grad rho|^2 / rho.
FunctionalValue fisher_standard(const Density& rho,
                                const QuadratureSpec& spec = {});

// Scale-covariant Fisher deformation
// F_lambda = (int rho^lambda)^{-1} int rho^{2 lambda - 3} |grad rho|^2;
// lambda = 1 reduces to the standard Fisher information.
FunctionalValue fisher_lambda(const Density& rho, const LambdaParam& lam,
                              const QuadratureSpec& spec = {});

// Biparametric gradient functional
// I_{beta,q} = int rho^{beta(q-1)+1} (|grad rho| / rho)^beta
//            = int rho^{beta(q-2)+1} |grad rho|^beta.
// beta = 2, q = lambda recovers F_lambda * int rho^lambda. Separable
// densities support beta = 2 only.
FunctionalValue biparametric_fisher(const Density& rho, double beta, double q,
                                    const QuadratureSpec& spec = {});

// Position-space variance <|x|^2> - |<x>|^2 (normalized moments).
FunctionalValue variance(const Density& rho, const QuadratureSpec& spec = {});

// Factorized pieces of F_lambda and int rho^lambda for a separable density
// rho = f(r) g(theta):
//   numerator   = radial_gradient * angular_high_power
//               + radial_high_power * angular_gradient
//   denominator = radial_power * angular_power
struct SeparableIntegrals {
    double radial_gradient = 0.0;    // int f^{2L-3} f'^2 r^2 dr   (L = lambda)
    double radial_high_power = 0.0;  // int f^{2L-1} dr
    double radial_power = 0.0;       // int f^L r^2 dr
    double angular_gradient = 0.0;   // 2 pi int g^{2L-3} g'^2 sin dtheta
    double angular_high_power = 0.0; // 2 pi int g^{2L-1} sin dtheta
    double angular_power = 0.0;      // 2 pi int g^L sin dtheta
    double err_estimate = 0.0;       // combined relative estimate
};
SeparableIntegrals separable_fisher_pieces(const Density& rho, double lambda,
                                           const QuadratureSpec& spec = {});

} // namespace cfr::functionals
