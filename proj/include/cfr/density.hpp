#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

// Probability densities with enough structure for the functional layer to
// reduce every integral to one-dimensional quadrature: plain line densities,
// radially symmetric densities in d dimensions, and separable
// radial-times-polar densities in three dimensions.

namespace cfr::densities {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool bounded() const;
};

// One-dimensional factor with an analytic derivative. `breakpoints` are
// interior hints for the quadrature layer: nodes, kinks, scale anchors.
struct Profile1D {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    Interval domain;
    std::vector<double> breakpoints;
};

class Density {
public:
    enum class Kind { line, radial, separable };

    static Density line(Profile1D f);
    // rho(x) = f(|x - center|) in `dim` dimensions (dim >= 2).
    static Density radial(int dim, Profile1D f,
                          std::array<double, 3> center = {0, 0, 0});
    // rho(x) = f(r) * g(theta) about `center`, three-dimensional.
    static Density separable(Profile1D radial_factor, Profile1D polar_factor,
                             std::array<double, 3> center = {0, 0, 0});

    Kind kind() const;
    int dim() const;
    double evaluate(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;

    const Profile1D& profile() const;  // line: f(x); radial/separable: f(r)
    const Profile1D& polar() const;    // separable only
    const std::array<double, 3>& center() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Minimizer family of the lambda-Fisher-Renyi product: compact support
// (C - |x|^2)_+^{1/(lambda-1)} for lambda > 1, heavy tail
// (C + |x|^2)^{1/(lambda-1)} for lambda < 1.
struct GeneralizedGaussian {
    double lambda;
    int dim;
    double a_const;  // normalization integral constant
    double c_const;  // scale constant in the kernel
    Density density;
};
GeneralizedGaussian make_generalized_gaussian(double lambda, int dim);

// Unit-mass Gaussians used throughout the test batteries.
Density gaussian_line(double sigma, double mean = 0.0);
Density gaussian_radial(int dim, double sigma);

// rho_{a,b}(x) = |a|^d rho(a(x-b)); mass-preserving scale and shift.
Density scale_translate(const Density& rho, double a, std::span<const double> b);

// n compressed disjoint copies of a bounded-support line density:
// sum_m n^{-1/2} rho(n^{1/2}(x - b_m)), consecutive supports separated by one
// compressed support width.
Density replicate_1d(const Density& rho, int n);

// The sin^2 arch on [-pi, 0] and its delta-perturbed companion whose second
// arch of height O(delta) lives on (0, delta^5 pi]; sup distance <= delta while
// the gradient content diverges as delta -> 0.
std::pair<Density, Density> near_continuity_pair(double delta);

// Grid-backed symmetric decreasing rearrangement.
class GridDensity1D {
public:
    // nodes strictly ascending; values non-negative. Builds a C^1 monotone
    // cubic interpolant per segment (Fritsch-Carlson limiter).
    GridDensity1D(std::vector<double> nodes, std::vector<double> values);

    double value(double x) const;
    double deriv(double x) const;
    Interval domain() const;
    const std::vector<double>& nodes() const;
    const std::vector<double>& values() const;
    void write_csv(std::ostream& os) const;  // x,rho rows
    Density as_density() const;
    void rescale(double factor);

private:
    std::vector<double> x_, y_, tangent_;
};

// Symmetric decreasing rearrangement of a bounded-support line density,
// sampled on grid_size uniform cells, interpolated, and renormalized.
// grid_size >= 64; unbounded support or non-line densities are rejected.
GridDensity1D rearrange_decreasing_1d(const Density& rho, int grid_size);

} // namespace cfr::densities
