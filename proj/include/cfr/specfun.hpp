#pragma once

#include <utility>
#include <vector>

// Special-function kernel: log-Gamma, Pochhammer symbols, generalized
// binomials, orthonormal Laguerre and Gegenbauer polynomials, and the polar
// factor of squared spherical harmonics. Everything is a pure function;
// degrees in scope are small, so forward recurrences are used throughout.

namespace cfr::specfun {

// ln Gamma(x) for x > 0, relative error <= 1e-14. Throws std::domain_error
// for x <= 0.
double log_gamma(double x);

// Pochhammer symbol (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
double pochhammer(double a, int k);

// Generalized binomial C(top, bottom) for real top and integer bottom.
// Returns 0 when bottom < 0, and when top is a non-negative integer with
// bottom > top.
double binomial_general(double top, int bottom);

struct PolyValue {
    double value;
    double derivative;
};

// Laguerre polynomial L_n^(alpha) in the standard (monic-leading aside)
// normalization of the three-term recurrence. Degree < 0 is the zero
// polynomial. alpha <= -1 throws std::domain_error.
PolyValue laguerre(int n, double alpha, double x);

// Orthonormal Laguerre: hatL_n^(alpha) = sqrt(n!/Gamma(n+alpha+1)) L_n^(alpha),
// orthonormal under the weight x^alpha e^-x on [0, inf).
PolyValue laguerre_orthonormal(int n, double alpha, double x);

// Zeros of L_n^(alpha) on (0, inf), ascending. Deterministic sign-scan plus
// bisection; intended for the small degrees used as quadrature breakpoints.
std::vector<double> laguerre_zeros(int n, double alpha);

// Gegenbauer (ultraspherical) polynomial C_n^(mu) and derivative in x.
// Degree < 0 is the zero polynomial.
PolyValue gegenbauer(int n, double mu, double x);

// Zeros of C_n^(mu) on (-1, 1), ascending.
std::vector<double> gegenbauer_zeros(int n, double mu);

// Polar factor Theta_{l,m}(theta) of a squared spherical harmonic |Y_lm|^2,
// phi-independent, normalized so that the sphere integral of Theta is 1.
class AngularDensity {
public:
    AngularDensity(int l, int m);  // |m| > l or l < 0 throws std::domain_error

    PolyValue eval(double theta) const;   // value and d/dtheta
    int l() const { return l_; }
    int m() const { return m_; }

    // Interior polar nodes (zeros of the Gegenbauer factor), ascending in
    // theta; empty for nodeless (e.g. circular) states.
    std::vector<double> theta_nodes() const;

private:
    int l_, m_;
    double norm_;  // squared normalization prefactor of the spherical harmonic
};

} // namespace cfr::specfun
