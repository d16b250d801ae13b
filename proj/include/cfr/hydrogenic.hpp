#pragma once

#include <optional>
#include <vector>

#include "cfr/complexity.hpp"

// Bound-state densities of a one-electron atom with nuclear charge Z, and
// their composite measure through two independent routes: adaptive quadrature
// over the separable factors, and closed forms (finite Gamma/hypergeometric
// expressions) where those exist. Atomic units throughout.

namespace cfr::hydrogenic {

using complexity::ComplexityReport;
using complexity::Method;
using densities::Density;
using functionals::LambdaParam;
using functionals::SeparableIntegrals;
using quadrature::QuadratureSpec;

struct QuantumNumbers {
    int n, l, m;
    double Z;
    QuantumNumbers(int n, int l, int m, double Z = 1.0);
    double energy() const;      // -Z^2 / (2 n^2)
    bool circular() const;      // l = n-1 and |m| = l (nodeless)
    int radial_nodes() const;   // n - l - 1
    int polar_nodes() const;    // l - |m|
};

// Position density as a separable radial * polar Density, normalized to 1.
Density density(const QuantumNumbers& qn);

// Finite expansion of int_0^inf e^{-x} x^power prod_i L_{d_i}^{(a_i)}(s_i x) dx
// where each (degree, alpha, scale) factor is repeated `count` times.
// A factor of degree -1 makes the whole product vanish.
struct LaguerreFactor {
    int count;
    int degree;
    double alpha;
    double scale;
};
double laguerre_product_moment(int power,
                               const std::vector<LaguerreFactor>& factors);

// Closed radial integrals of the lambda-Fisher construction:
//   gradient   = int f^{2L-3} f'^2 r^2 dr
//   high_power = int f^{2L-1} dr
//   power      = int f^L r^2 dr
// Valid when 2*lambda is an integer >= 2 and, for states with radial nodes,
// lambda itself is an integer (odd powers of a sign-changing Laguerre factor
// would otherwise be integrated with sign). Throws unsupported_error outside
// that domain.
struct RadialIntegrals {
    double gradient;
    double high_power;
    double power;
};
RadialIntegrals radial_integrals_closed(const QuantumNumbers& qn, double lambda);

// The derivative-bracket moment sum entering the closed gradient integral.
double gradient_moment_sum(int n, int l, double lambda);

// Closed separable pieces. Circular states (l = n-1 = |m|) admit Gamma-form
// pieces for every admissible lambda; l = 0 states follow the
// laguerre_product_moment domain above.
SeparableIntegrals circular_pieces_closed(int n, double lambda, double Z = 1.0);
SeparableIntegrals sharp_pieces_closed(int n, double lambda, double Z = 1.0);

// Fully reduced product forms of C (independent of the piece assembly; used
// to cross-check it). Z cancels exactly.
double cfr_ground_product_form(double lambda);
double cfr_circular_product_form(int n, double lambda);
double cfr_sharp_product_form(int n, double lambda);

// Reports. cfr_numeric integrates the separable pieces; cfr_closed returns
// the analytic assembly when one covers the state, and nullopt otherwise.
ComplexityReport cfr_numeric(const QuantumNumbers& qn, const LambdaParam& lam,
                             const QuadratureSpec& spec = {});
std::optional<ComplexityReport> cfr_closed(const QuantumNumbers& qn,
                                           const LambdaParam& lam);
// method = analytic: closed or unsupported_error. quadrature: numeric.
// both: closed values when available with the quadrature discrepancy
// recorded; silently degrades to quadrature-only when no closed form exists.
ComplexityReport cfr_report(const QuantumNumbers& qn, const LambdaParam& lam,
                            Method method, const QuadratureSpec& spec = {});

} // namespace cfr::hydrogenic
