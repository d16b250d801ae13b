#include "cfr/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "cfr/specfun.hpp"

namespace cfr::densities {

bool Interval::bounded() const {
    return std::isfinite(lo) && std::isfinite(hi);
}

struct Density::Impl {
    Kind kind;
    int dim;
    Profile1D profile;
    Profile1D polar;
    std::array<double, 3> center{0, 0, 0};
};

Density Density::line(Profile1D f) {
    Density d;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::line;
    impl->dim = 1;
    impl->profile = std::move(f);
    d.impl_ = std::move(impl);
    return d;
}

Density Density::radial(int dim, Profile1D f, std::array<double, 3> center) {
    if (dim < 2 || dim > 3)
        throw std::domain_error("radial density: dim must be 2 or 3");
    if (f.domain.lo < 0.0)
        throw std::domain_error("radial density: profile domain must start at r >= 0");
    Density d;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::radial;
    impl->dim = dim;
    impl->profile = std::move(f);
    impl->center = center;
    d.impl_ = std::move(impl);
    return d;
}

Density Density::separable(Profile1D radial_factor, Profile1D polar_factor,
                           std::array<double, 3> center) {
    if (radial_factor.domain.lo < 0.0)
        throw std::domain_error("separable density: radial domain must start at r >= 0");
    Density d;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::separable;
    impl->dim = 3;
    impl->profile = std::move(radial_factor);
    impl->polar = std::move(polar_factor);
    impl->center = center;
    d.impl_ = std::move(impl);
    return d;
}

Density::Kind Density::kind() const { return impl_->kind; }
int Density::dim() const { return impl_->dim; }
const Profile1D& Density::profile() const { return impl_->profile; }

const Profile1D& Density::polar() const {
    if (impl_->kind != Kind::separable)
        throw std::domain_error("polar(): density has no angular factor");
    return impl_->polar;
}

const std::array<double, 3>& Density::center() const { return impl_->center; }

namespace {

bool in_domain(const Interval& iv, double x) {
    return x >= iv.lo && x <= iv.hi;
}

double safe_profile_value(const Profile1D& p, double x) {
    if (!in_domain(p.domain, x)) return 0.0;
    double v = p.value(x);
    return v > 0.0 ? v : 0.0;
}

double safe_profile_deriv(const Profile1D& p, double x) {
    if (!in_domain(p.domain, x)) return 0.0;
    return p.deriv(x);
}

} // namespace

double Density::evaluate(std::span<const double> x) const {
    const Impl& im = *impl_;
    if (static_cast<int>(x.size()) != im.dim)
        throw std::domain_error("evaluate: point dimension mismatch");
    switch (im.kind) {
    case Kind::line:
        return safe_profile_value(im.profile, x[0]);
    case Kind::radial: {
        double r2 = 0.0;
        for (int i = 0; i < im.dim; ++i) {
            double v = x[i] - im.center[i];
            r2 += v * v;
        }
        return safe_profile_value(im.profile, std::sqrt(r2));
    }
    case Kind::separable: {
        double v0 = x[0] - im.center[0];
        double v1 = x[1] - im.center[1];
        double v2 = x[2] - im.center[2];
        double r = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
        if (r == 0.0) {
            // theta undefined at the center; the radial factor of every
            // angular-dependent state vanishes there anyway.
            double f = safe_profile_value(im.profile, 0.0);
            if (f == 0.0) return 0.0;
            return f * safe_profile_value(im.polar, 0.0);
        }
        double theta = std::atan2(std::hypot(v0, v1), v2);
        return safe_profile_value(im.profile, r) *
               safe_profile_value(im.polar, theta);
    }
    }
    return 0.0;
}

std::vector<double> Density::gradient(std::span<const double> x) const {
    const Impl& im = *impl_;
    if (static_cast<int>(x.size()) != im.dim)
        throw std::domain_error("gradient: point dimension mismatch");
    switch (im.kind) {
    case Kind::line:
        return {safe_profile_deriv(im.profile, x[0])};
    case Kind::radial: {
        std::vector<double> v(im.dim);
        double r2 = 0.0;
        for (int i = 0; i < im.dim; ++i) {
            v[i] = x[i] - im.center[i];
            r2 += v[i] * v[i];
        }
        double r = std::sqrt(r2);
        if (r == 0.0) return std::vector<double>(im.dim, 0.0);
        double fd = safe_profile_deriv(im.profile, r);
        for (int i = 0; i < im.dim; ++i) v[i] *= fd / r;
        return v;
    }
    case Kind::separable: {
        double v0 = x[0] - im.center[0];
        double v1 = x[1] - im.center[1];
        double v2 = x[2] - im.center[2];
        double rxy = std::hypot(v0, v1);
        double r = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
        if (r == 0.0) return {0.0, 0.0, 0.0};
        double theta = std::atan2(rxy, v2);
        double f = safe_profile_value(im.profile, r);
        double fd = safe_profile_deriv(im.profile, r);
        double g = safe_profile_value(im.polar, theta);
        double gd = safe_profile_deriv(im.polar, theta);
        std::vector<double> grad(3);
        // radial direction
        grad[0] = fd * g * v0 / r;
        grad[1] = fd * g * v1 / r;
        grad[2] = fd * g * v2 / r;
        if (rxy > 0.0) {
            // polar direction e_theta = (cos t cos p, cos t sin p, -sin t)
            double coef = f * gd / r;
            grad[0] += coef * (v0 * v2) / (r * rxy);
            grad[1] += coef * (v1 * v2) / (r * rxy);
            grad[2] += coef * (-rxy / r);
        }
        // on the z-axis the polar term vanishes for any profile that is
        // smooth at the poles (gd -> 0); drop it there.
        return grad;
    }
    }
    return {};
}

// --- generalized Gaussian -----------------------------------------------

GeneralizedGaussian make_generalized_gaussian(double lambda, int dim) {
    if (dim < 1 || dim > 3)
        throw std::domain_error("make_generalized_gaussian: dim must be 1..3");
    double bound = std::max((dim - 1.0) / dim, dim / (dim + 2.0));
    if (!(lambda > bound))
        throw std::domain_error(
            "make_generalized_gaussian: lambda below the admissible bound");
    if (lambda == 1.0)
        throw std::domain_error(
            "make_generalized_gaussian: lambda = 1 has no kernel of this family "
            "(the limit is the standard Gaussian)");

    const double d = dim;
    const double half_log_pi = 0.5 * std::log(M_PI);
    double log_a;
    if (lambda > 1.0) {
        double z = lambda / (lambda - 1.0);
        log_a = d * half_log_pi + specfun::log_gamma(z) -
                specfun::log_gamma(0.5 * d + z);
    } else {
        double z = 1.0 / (1.0 - lambda);
        log_a = d * half_log_pi + specfun::log_gamma(z - 0.5 * d) -
                specfun::log_gamma(z);
    }
    double a_const = std::exp(log_a);
    double c_const =
        std::exp(-2.0 * (lambda - 1.0) / (d * (lambda - 1.0) + 2.0) * log_a);

    const double e = 1.0 / (lambda - 1.0);
    const double C = c_const;
    const double edge = std::sqrt(C);

    // For compact support (lambda > 1), C - s^2 loses all precision near the
    // edge; the factored form (edge - |x|)(edge + |x|) keeps the subtraction
    // exact there (Sterbenz), so the kernel stays accurate to 1 ulp however
    // close to the boundary it is sampled. That matters when the profile is
    // weighted by a negative power in gradient functionals.
    auto arg = [edge, C, lambda](double ax) {  // ax = |x| >= 0
        return (lambda > 1.0) ? (edge - ax) * (edge + ax) : C + ax * ax;
    };
    auto kernel = [e, arg](double ax) {
        double u = arg(ax);
        if (u <= 0.0) return 0.0;
        return std::exp(e * std::log(u));
    };

    GeneralizedGaussian out;
    out.lambda = lambda;
    out.dim = dim;
    out.a_const = a_const;
    out.c_const = c_const;

    Profile1D p;
    if (dim == 1) {
        p.value = [kernel](double x) { return kernel(std::fabs(x)); };
        p.deriv = [e, arg, lambda](double x) {
            double u = arg(std::fabs(x));
            if (u <= 0.0) return 0.0;
            double sign = (lambda > 1.0) ? -1.0 : 1.0;
            return sign * 2.0 * x * e * std::exp((e - 1.0) * std::log(u));
        };
        if (lambda > 1.0) {
            p.domain = {-edge, edge};
            p.breakpoints = {-0.5 * edge, 0.0, 0.5 * edge};
        } else {
            p.domain = {};  // whole line
            p.breakpoints = {-8.0 * edge, -edge, 0.0, edge, 8.0 * edge};
        }
        out.density = Density::line(std::move(p));
    } else {
        p.value = [kernel](double r) { return kernel(r); };
        p.deriv = [e, arg, lambda](double r) {
            double u = arg(r);
            if (u <= 0.0) return 0.0;
            double sign = (lambda > 1.0) ? -1.0 : 1.0;
            return sign * 2.0 * r * e * std::exp((e - 1.0) * std::log(u));
        };
        if (lambda > 1.0) {
            p.domain = {0.0, edge};
            p.breakpoints = {0.5 * edge};
        } else {
            p.domain = {0.0, std::numeric_limits<double>::infinity()};
            p.breakpoints = {edge, 4.0 * edge, 16.0 * edge};
        }
        out.density = Density::radial(dim, std::move(p));
    }
    return out;
}

// --- Gaussians ------------------------------------------------------------

Density gaussian_line(double sigma, double mean) {
    if (!(sigma > 0.0)) throw std::domain_error("gaussian_line: sigma must be > 0");
    double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
    Profile1D p;
    p.value = [=](double x) {
        double t = (x - mean) / sigma;
        return norm * std::exp(-0.5 * t * t);
    };
    p.deriv = [=](double x) {
        double t = (x - mean) / sigma;
        return -norm * t / sigma * std::exp(-0.5 * t * t);
    };
    p.domain = {};
    p.breakpoints = {mean - 6 * sigma, mean - 2 * sigma, mean,
                     mean + 2 * sigma, mean + 6 * sigma};
    return Density::line(std::move(p));
}

Density gaussian_radial(int dim, double sigma) {
    if (!(sigma > 0.0)) throw std::domain_error("gaussian_radial: sigma must be > 0");
    if (dim < 2 || dim > 3)
        throw std::domain_error("gaussian_radial: dim must be 2 or 3");
    double norm = std::pow(2.0 * M_PI * sigma * sigma, -0.5 * dim);
    Profile1D p;
    p.value = [=](double r) {
        double t = r / sigma;
        return norm * std::exp(-0.5 * t * t);
    };
    p.deriv = [=](double r) {
        double t = r / sigma;
        return -norm * t / sigma * std::exp(-0.5 * t * t);
    };
    p.domain = {0.0, std::numeric_limits<double>::infinity()};
    p.breakpoints = {sigma, 3 * sigma, 8 * sigma};
    return Density::radial(dim, std::move(p));
}

// --- scale / translate ------------------------------------------------------

Density scale_translate(const Density& rho, double a, std::span<const double> b) {
    if (a == 0.0) throw std::domain_error("scale_translate: a must be nonzero");
    if (static_cast<int>(b.size()) != rho.dim())
        throw std::domain_error("scale_translate: shift dimension mismatch");
    const int d = rho.dim();
    const double jac = std::pow(std::fabs(a), d);

    if (rho.kind() == Density::Kind::line) {
        Profile1D base = rho.profile();
        double shift = b[0];
        Profile1D p;
        p.value = [base, a, shift, jac](double x) {
            double t = a * (x - shift);
            if (t < base.domain.lo || t > base.domain.hi) return 0.0;
            return jac * base.value(t);
        };
        p.deriv = [base, a, shift, jac](double x) {
            double t = a * (x - shift);
            if (t < base.domain.lo || t > base.domain.hi) return 0.0;
            return jac * a * base.deriv(t);
        };
        auto map_back = [a, shift](double t) { return shift + t / a; };
        double m0 = map_back(base.domain.lo), m1 = map_back(base.domain.hi);
        p.domain = {std::min(m0, m1), std::max(m0, m1)};
        for (double bp : base.breakpoints) p.breakpoints.push_back(map_back(bp));
        std::sort(p.breakpoints.begin(), p.breakpoints.end());
        return Density::line(std::move(p));
    }

    // radial / separable: rho(a(x-b)) = f(|a| |x - b - c/a|) [* polar factor],
    // and the polar factor is parity-even, so a < 0 leaves it unchanged.
    Profile1D base = rho.profile();
    double s = std::fabs(a);
    Profile1D p;
    p.value = [base, s, jac](double r) {
        double t = s * r;
        if (t < base.domain.lo || t > base.domain.hi) return 0.0;
        return jac * base.value(t);
    };
    p.deriv = [base, s, jac](double r) {
        double t = s * r;
        if (t < base.domain.lo || t > base.domain.hi) return 0.0;
        return jac * s * base.deriv(t);
    };
    p.domain = {base.domain.lo / s, base.domain.hi / s};
    for (double bp : base.breakpoints) p.breakpoints.push_back(bp / s);

    std::array<double, 3> center{0, 0, 0};
    for (int i = 0; i < d; ++i) center[i] = b[i] + rho.center()[i] / a;

    if (rho.kind() == Density::Kind::radial)
        return Density::radial(d, std::move(p), center);
    return Density::separable(std::move(p), rho.polar(), center);
}

// --- replication -------------------------------------------------------------

Density replicate_1d(const Density& rho, int n) {
    if (rho.kind() != Density::Kind::line)
        throw std::domain_error("replicate_1d: line densities only");
    if (n < 1) throw std::domain_error("replicate_1d: n must be >= 1");
    const Profile1D base = rho.profile();
    if (!base.domain.bounded())
        throw std::domain_error("replicate_1d: density must have bounded support");

    const double lo = base.domain.lo, hi = base.domain.hi;
    const double w = hi - lo;
    const double s = std::sqrt(static_cast<double>(n));
    const double wc = w / s;  // compressed copy width

    std::vector<double> shifts(n);
    for (int m = 0; m < n; ++m) shifts[m] = lo * (1.0 - 1.0 / s) + 2.0 * m * wc;

    Profile1D p;
    p.value = [base, shifts, s, lo, hi](double x) {
        double acc = 0.0;
        for (double bm : shifts) {
            double t = s * (x - bm);
            if (t >= lo && t <= hi) acc += base.value(t) / s;
        }
        return acc;
    };
    p.deriv = [base, shifts, s, lo, hi](double x) {
        double acc = 0.0;
        for (double bm : shifts) {
            double t = s * (x - bm);
            if (t >= lo && t <= hi) acc += base.deriv(t);
        }
        return acc;
    };
    p.domain = {lo, lo + (2.0 * n - 1.0) * wc};
    for (int m = 0; m < n; ++m) {
        double start = lo + 2.0 * m * wc;
        double end = start + wc;
        if (m > 0) p.breakpoints.push_back(start);
        if (m < n - 1) p.breakpoints.push_back(end);
        for (double bp : base.breakpoints)
            p.breakpoints.push_back(shifts[m] + bp / s);
    }
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    return Density::line(std::move(p));
}

// --- near-continuity pair ----------------------------------------------------

namespace {

// sin^2 on [-pi, 0], evaluated so it vanishes exactly at both stored edge
// doubles and stays cancellation-free beside them: the left half goes through
// the period-pi identity sin^2(x) = sin^2(x + pi), where x + pi is an exact
// subtraction near the edge (Sterbenz). Without this, gradient functionals
// with a negative density power see coordinate noise of order eps/pi at the
// left edge, which silently swallows singular mass the error estimator
// cannot detect.
double arch_sq(double x) {
    double s = (x <= -0.5 * M_PI) ? std::sin(x + M_PI) : std::sin(x);
    return s * s;
}
double arch_sq_deriv(double x) {  // d/dx sin^2(x) = sin(2x)
    double t = (x <= -0.5 * M_PI) ? (x + M_PI) : x;
    return std::sin(2.0 * t);
}

} // namespace

std::pair<Density, Density> near_continuity_pair(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("near_continuity_pair: delta must be in (0,1)");

    Profile1D arch;
    arch.value = [](double x) { return 2.0 / M_PI * arch_sq(x); };
    arch.deriv = [](double x) { return 2.0 / M_PI * arch_sq_deriv(x); };
    arch.domain = {-M_PI, 0.0};
    arch.breakpoints = {-0.5 * M_PI};
    Density base = Density::line(std::move(arch));

    const double d5 = std::pow(delta, 5);
    const double amp = 2.0 / (M_PI * (1.0 + std::pow(delta, 6)));
    Profile1D pert;
    pert.value = [amp, d5, delta](double x) {
        if (x <= 0.0) return amp * arch_sq(x);
        double sx = std::sin(x / d5);
        return amp * delta * sx * sx;
    };
    pert.deriv = [amp, d5, delta](double x) {
        if (x <= 0.0) return amp * arch_sq_deriv(x);
        return amp * delta / d5 * std::sin(2.0 * x / d5);
    };
    pert.domain = {-M_PI, d5 * M_PI};
    pert.breakpoints = {-0.5 * M_PI, 0.0, 0.5 * d5 * M_PI};
    return {std::move(base), Density::line(std::move(pert))};
}

// --- monotone cubic grid density ---------------------------------------------

GridDensity1D::GridDensity1D(std::vector<double> nodes, std::vector<double> values)
    : x_(std::move(nodes)), y_(std::move(values)) {
    const size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::domain_error("GridDensity1D: need matching nodes/values, >= 2");
    for (size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::domain_error("GridDensity1D: nodes must be strictly ascending");

    // Fritsch-Carlson monotone tangents.
    std::vector<double> h(n - 1), d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    tangent_.assign(n, 0.0);
    tangent_[0] = d[0];
    tangent_[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            tangent_[i] = 0.0;
        else
            tangent_[i] = 0.5 * (d[i - 1] + d[i]);
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            tangent_[i] = 0.0;
            tangent_[i + 1] = 0.0;
            continue;
        }
        double alpha = tangent_[i] / d[i];
        double beta = tangent_[i + 1] / d[i];
        double s = alpha * alpha + beta * beta;
        if (s > 9.0) {
            double tau = 3.0 / std::sqrt(s);
            tangent_[i] = tau * alpha * d[i];
            tangent_[i + 1] = tau * beta * d[i];
        }
    }
}

namespace {

size_t hermite_segment(const std::vector<double>& x, double v) {
    auto it = std::upper_bound(x.begin(), x.end(), v);
    size_t i = static_cast<size_t>(it - x.begin());
    if (i == 0) return 0;
    if (i >= x.size()) return x.size() - 2;
    return i - 1;
}

} // namespace

double GridDensity1D::value(double x) const {
    if (x < x_.front() || x > x_.back()) return 0.0;
    size_t i = hermite_segment(x_, x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    double v = h00 * y_[i] + h * h10 * tangent_[i] + h01 * y_[i + 1] +
               h * h11 * tangent_[i + 1];
    return v > 0.0 ? v : 0.0;
}

double GridDensity1D::deriv(double x) const {
    if (x < x_.front() || x > x_.back()) return 0.0;
    size_t i = hermite_segment(x_, x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double t2 = t * t;
    double g00 = (6 * t2 - 6 * t) / h, g10 = 3 * t2 - 4 * t + 1;
    double g01 = (-6 * t2 + 6 * t) / h, g11 = 3 * t2 - 2 * t;
    return g00 * y_[i] + g10 * tangent_[i] + g01 * y_[i + 1] +
           g11 * tangent_[i + 1];
}

Interval GridDensity1D::domain() const { return {x_.front(), x_.back()}; }
const std::vector<double>& GridDensity1D::nodes() const { return x_; }
const std::vector<double>& GridDensity1D::values() const { return y_; }

void GridDensity1D::rescale(double factor) {
    for (double& v : y_) v *= factor;
    for (double& v : tangent_) v *= factor;
}

void GridDensity1D::write_csv(std::ostream& os) const {
    os << "x,rho\n";
    char buf[64];
    for (size_t i = 0; i < x_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", x_[i], y_[i]);
        os << buf;
    }
}

Density GridDensity1D::as_density() const {
    auto self = std::make_shared<GridDensity1D>(*this);
    Profile1D p;
    p.value = [self](double x) { return self->value(x); };
    p.deriv = [self](double x) { return self->deriv(x); };
    p.domain = self->domain();
    // Every knot is a breakpoint: the interpolant is a single cubic between
    // knots, so a 15-point rule per initial segment is already exact and the
    // adaptive stage has nothing left to chase.
    const auto& xs = self->nodes();
    p.breakpoints.assign(xs.begin() + 1, xs.end() - 1);
    return Density::line(std::move(p));
}

// --- symmetric decreasing rearrangement ---------------------------------------

GridDensity1D rearrange_decreasing_1d(const Density& rho, int grid_size) {
    if (rho.kind() != Density::Kind::line)
        throw std::domain_error("rearrange_decreasing_1d: line densities only");
    const Profile1D& base = rho.profile();
    if (!base.domain.bounded())
        throw std::domain_error(
            "rearrange_decreasing_1d: density must have bounded support");
    if (grid_size < 64)
        throw std::domain_error("rearrange_decreasing_1d: grid_size must be >= 64");

    const int N = grid_size;
    const double lo = base.domain.lo, hi = base.domain.hi;
    const double h = (hi - lo) / N;

    // Sample on a refined auxiliary grid, sort, then average each block of K
    // fine cells. The block mean is the exact local average of the quantile
    // function over one output measure cell, so near-ties in the sorted
    // sequence (several bumps crossing the same level) are averaged out
    // instead of turning into micro-plateaus of the monotone interpolant,
    // which would inflate gradient integrals of the rearranged profile.
    const int K = 8;
    std::vector<double> fine(static_cast<size_t>(N) * K);
    const double hf = (hi - lo) / (static_cast<double>(N) * K);
    for (size_t i = 0; i < fine.size(); ++i) {
        double v = base.value(lo + (static_cast<double>(i) + 0.5) * hf);
        fine[i] = v > 0.0 ? v : 0.0;
    }
    std::sort(fine.begin(), fine.end(), std::greater<double>());
    std::vector<double> samples(N);
    for (int i = 0; i < N; ++i) {
        double acc = 0.0;
        for (int j = 0; j < K; ++j)
            acc += fine[static_cast<size_t>(i) * K + j];
        samples[i] = acc / K;
    }

    // Level-set widths shrink by half per side: cell i of the sorted profile
    // occupies |x| in [i*h/2, (i+1)*h/2); pin values at cell midpoints.
    std::vector<double> z, v;
    z.reserve(N + 2);
    v.reserve(N + 2);
    z.push_back(0.0);
    v.push_back(samples[0]);
    for (int i = 0; i < N; ++i) {
        z.push_back((i + 0.5) * 0.5 * h);
        v.push_back(samples[i]);
    }
    double tail = samples[N - 1] - 0.5 * (samples[N - 2] - samples[N - 1]);
    z.push_back(N * 0.5 * h);
    v.push_back(tail > 0.0 ? tail : 0.0);

    // Mirror to the even extension on [-L, L].
    std::vector<double> nodes, values;
    nodes.reserve(2 * z.size() - 1);
    values.reserve(2 * z.size() - 1);
    for (size_t i = z.size(); i-- > 1;) {
        nodes.push_back(-z[i]);
        values.push_back(v[i]);
    }
    for (size_t i = 0; i < z.size(); ++i) {
        nodes.push_back(z[i]);
        values.push_back(v[i]);
    }

    GridDensity1D grid(std::move(nodes), std::move(values));

    // Renormalize with the exact Hermite segment integral.
    const auto& xs = grid.nodes();
    const auto& ys = grid.values();
    // Exact Hermite segment integral: h/2 (y0+y1) + h^2/12 (m0-m1).
    double mass = 0.0;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        double hh = xs[i + 1] - xs[i];
        double m0 = grid.deriv(xs[i]);
        double m1 = grid.deriv(xs[i + 1]);
        mass += 0.5 * hh * (ys[i] + ys[i + 1]) + hh * hh / 12.0 * (m0 - m1);
    }
    if (!(mass > 0.0))
        throw std::domain_error("rearrange_decreasing_1d: zero mass after sampling");
    grid.rescale(1.0 / mass);
    return grid;
}

} // namespace cfr::densities
