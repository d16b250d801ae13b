#include "cfr/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cfr/errors.hpp"

namespace cfr::functionals {

LambdaParam::LambdaParam(double value, int dim) : value(value), dim(dim) {
    if (dim < 1 || dim > 3)
        throw std::domain_error("LambdaParam: dim must be 1..3");
    if (!std::isfinite(value) || !(value > lower_bound(dim)))
        throw std::domain_error(
            "LambdaParam: lambda " + std::to_string(value) +
            " is not above the admissible bound " +
            std::to_string(lower_bound(dim)) + " for dim " + std::to_string(dim));
}

double LambdaParam::lower_bound(int dim) {
    return std::max((dim - 1.0) / dim, dim / (dim + 2.0));
}

double LambdaParam::mu() const { return 2.0 + dim * (value - 1.0); }
bool LambdaParam::shannon_limit() const { return value == 1.0; }

namespace {

using densities::Profile1D;
using quadrature::QuadratureResult;

constexpr double kPi = 3.14159265358979323846;

double surface_area(int d) {  // measure of the unit sphere in R^d
    return d == 3 ? 4.0 * kPi : 2.0 * kPi;
}

// v^p extended by zero for v <= 0.
double pow_pos(double v, double p) {
    if (v <= 0.0) return 0.0;
    return std::exp(p * std::log(v));
}

// rho^a |grad|^b in log space, extended by zero where either factor dies.
double grad_term(double rho, double grad, double rho_exp, double grad_exp) {
    if (rho <= 0.0) return 0.0;
    double g = std::fabs(grad);
    if (g == 0.0) return 0.0;
    return std::exp(rho_exp * std::log(rho) + grad_exp * std::log(g));
}

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

// Integrate g over the profile's domain, pre-splitting at its breakpoints and
// mapping infinite ends through x = t/(1-t).
QuadratureResult integrate_profile(const Profile1D& p,
                                   const quadrature::Integrand& g,
                                   const QuadratureSpec& spec) {
    const double lo = p.domain.lo, hi = p.domain.hi;
    QuadratureSpec s = spec;
    for (double b : p.breakpoints) s.breakpoints.push_back(b);

    const bool lo_fin = std::isfinite(lo), hi_fin = std::isfinite(hi);
    if (lo_fin && hi_fin) return quadrature::integrate_interval(g, lo, hi, s);

    if (lo_fin) {  // [lo, inf)
        QuadratureSpec sh = s;
        sh.breakpoints.clear();
        for (double b : s.breakpoints)
            if (b > lo) sh.breakpoints.push_back(b - lo);
        return quadrature::integrate_semi_infinite(
            [&g, lo](double u) { return g(lo + u); }, sh);
    }
    if (hi_fin) {  // (-inf, hi]
        QuadratureSpec sh = s;
        sh.breakpoints.clear();
        for (double b : s.breakpoints)
            if (b < hi) sh.breakpoints.push_back(hi - b);
        return quadrature::integrate_semi_infinite(
            [&g, hi](double u) { return g(hi - u); }, sh);
    }
    // whole line: split at an anchor inside the structure
    double c = 0.0;
    if (!s.breakpoints.empty()) {
        std::vector<double> bp = s.breakpoints;
        std::sort(bp.begin(), bp.end());
        c = bp[bp.size() / 2];
    }
    QuadratureSpec up = s, down = s;
    up.breakpoints.clear();
    down.breakpoints.clear();
    for (double b : s.breakpoints) {
        if (b > c) up.breakpoints.push_back(b - c);
        if (b < c) down.breakpoints.push_back(c - b);
    }
    auto right = quadrature::integrate_semi_infinite(
        [&g, c](double u) { return g(c + u); }, up);
    auto left = quadrature::integrate_semi_infinite(
        [&g, c](double u) { return g(c - u); }, down);
    return {right.value + left.value, right.err_estimate + left.err_estimate};
}

// Whole-space integral of W(rho, |grad rho|) for line and radial densities.
QuadratureResult pointwise_integral(
    const Density& rho, const std::function<double(double, double)>& W,
    const QuadratureSpec& spec) {
    const Profile1D& p = rho.profile();
    if (rho.kind() == Density::Kind::line) {
        return integrate_profile(
            p, [&](double x) { return W(p.value(x), p.deriv(x)); }, spec);
    }
    if (rho.kind() == Density::Kind::radial) {
        const int d = rho.dim();
        const double sd = surface_area(d);
        return integrate_profile(
            p,
            [&, d, sd](double r) {
                return sd * std::pow(r, d - 1) * W(p.value(r), p.deriv(r));
            },
            spec);
    }
    throw std::domain_error("pointwise integral: separable density needs the "
                            "factorized path");
}

// Separable factor integrals: G receives (coordinate, value, derivative).
QuadratureResult sep_radial(const Profile1D& f,
                            const std::function<double(double, double, double)>& G,
                            const QuadratureSpec& spec) {
    return integrate_profile(
        f, [&](double r) { return G(r, f.value(r), f.deriv(r)); }, spec);
}

QuadratureResult sep_polar(const Profile1D& g,
                           const std::function<double(double, double, double)>& G,
                           const QuadratureSpec& spec) {
    // includes the azimuthal 2 pi and the sin(theta) measure
    return integrate_profile(
        g,
        [&](double t) {
            return 2.0 * kPi * std::sin(t) * G(t, g.value(t), g.deriv(t));
        },
        spec);
}

template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const convergence_error& e) {
        throw divergence_error(std::string(what) +
                               ": quadrature did not converge, the integral is "
                               "divergent or beyond resolution (" +
                               e.what() + ")");
    }
}

double rel_err(const QuadratureResult& r) {
    return r.value != 0.0 ? std::fabs(r.err_estimate / r.value) : r.err_estimate;
}

// int rho^p over space for any structure kind.
QuadratureResult power_integral(const Density& rho, double p,
                                const QuadratureSpec& spec) {
    if (rho.kind() != Density::Kind::separable) {
        return pointwise_integral(
            rho, [p](double v, double) { return pow_pos(v, p); }, spec);
    }
    auto rad = sep_radial(
        rho.profile(),
        [p](double r, double v, double) { return r * r * pow_pos(v, p); }, spec);
    auto ang = sep_polar(
        rho.polar(), [p](double, double v, double) { return pow_pos(v, p); },
        spec);
    return {rad.value * ang.value,
            std::fabs(rad.value * ang.value) * (rel_err(rad) + rel_err(ang))};
}

// int rho^{2L-3} |grad rho|^2 over space (the F_lambda numerator).
QuadratureResult gradient_numerator(const Density& rho, double lambda,
                                    const QuadratureSpec& spec) {
    const double re = 2.0 * lambda - 3.0;
    if (rho.kind() != Density::Kind::separable) {
        return pointwise_integral(
            rho, [re](double v, double dv) { return grad_term(v, dv, re, 2.0); },
            spec);
    }
    const Profile1D& f = rho.profile();
    const Profile1D& g = rho.polar();
    auto rg = sep_radial(
        f,
        [re](double r, double v, double dv) {
            return r * r * grad_term(v, dv, re, 2.0);
        },
        spec);
    auto ahp = sep_polar(
        g,
        [lambda](double, double v, double) {
            return pow_pos(v, 2.0 * lambda - 1.0);
        },
        spec);
    auto rhp = sep_radial(
        f,
        [lambda](double, double v, double) {
            return pow_pos(v, 2.0 * lambda - 1.0);
        },
        spec);
    auto ag = sep_polar(
        g,
        [re](double, double v, double dv) { return grad_term(v, dv, re, 2.0); },
        spec);
    double value = rg.value * ahp.value + rhp.value * ag.value;
    double err = std::fabs(rg.value * ahp.value) * (rel_err(rg) + rel_err(ahp)) +
                 std::fabs(rhp.value * ag.value) * (rel_err(rhp) + rel_err(ag));
    return {value, err};
}

FunctionalValue as_functional(const QuadratureResult& r) {
    return {r.value, r.err_estimate};
}

} // namespace

FunctionalValue normalization(const Density& rho, const QuadratureSpec& spec) {
    return guarded("normalization", [&] {
        return as_functional(power_integral(rho, 1.0, spec));
    });
}

FunctionalValue shannon_entropy(const Density& rho, const QuadratureSpec& spec) {
    return guarded("shannon_entropy", [&]() -> FunctionalValue {
        if (rho.kind() != Density::Kind::separable) {
            auto r = pointwise_integral(
                rho, [](double v, double) { return -xlogx(v); }, spec);
            return as_functional(r);
        }
        // -int f g ln(f g) = -(int f ln f)(int g) - (int f)(int g ln g)
        const Profile1D& f = rho.profile();
        const Profile1D& g = rho.polar();
        auto f_log = sep_radial(
            f, [](double r, double v, double) { return r * r * xlogx(v); }, spec);
        auto f_mass = sep_radial(
            f, [](double r, double v, double) { return r * r * (v > 0 ? v : 0); },
            spec);
        auto g_log = sep_polar(
            g, [](double, double v, double) { return xlogx(v); }, spec);
        auto g_mass = sep_polar(
            g, [](double, double v, double) { return v > 0 ? v : 0; }, spec);
        double value = -(f_log.value * g_mass.value + f_mass.value * g_log.value);
        double err = f_log.err_estimate * std::fabs(g_mass.value) +
                     g_log.err_estimate * std::fabs(f_mass.value) +
                     f_mass.err_estimate * std::fabs(g_log.value) +
                     g_mass.err_estimate * std::fabs(f_log.value);
        return {value, err};
    });
}

FunctionalValue renyi_entropy(const Density& rho, double p,
                              const QuadratureSpec& spec) {
    if (!(p > 0.0)) throw std::domain_error("renyi_entropy: p must be > 0");
    if (p == 1.0) return shannon_entropy(rho, spec);
    return guarded("renyi_entropy", [&]() -> FunctionalValue {
        auto t = power_integral(rho, p, spec);
        if (!(t.value > 0.0))
            throw divergence_error("renyi_entropy: vanishing power integral");
        return {std::log(t.value) / (1.0 - p),
                rel_err(t) / std::fabs(1.0 - p)};
    });
}

FunctionalValue renyi_power(const Density& rho, const LambdaParam& lam,
                            const QuadratureSpec& spec) {
    if (lam.dim != rho.dim())
        throw std::domain_error("renyi_power: lambda/density dimension mismatch");
    if (lam.shannon_limit()) {
        auto s = shannon_entropy(rho, spec);
        double v = std::exp(2.0 / lam.dim * s.value);
        return {v, v * 2.0 / lam.dim * s.err_estimate};
    }
    return guarded("renyi_power", [&]() -> FunctionalValue {
        auto t = power_integral(rho, lam.value, spec);
        if (!(t.value > 0.0))
            throw divergence_error("renyi_power: vanishing power integral");
        double expo = (lam.mu() / lam.dim) / (1.0 - lam.value);
        double v = std::exp(expo * std::log(t.value));
        return {v, std::fabs(v * expo) * rel_err(t)};
    });
}

FunctionalValue fisher_standard(const Density& rho, const QuadratureSpec& spec) {
    return guarded("fisher_standard", [&] {
        return as_functional(gradient_numerator(rho, 1.0, spec));
    });
}

FunctionalValue fisher_lambda(const Density& rho, const LambdaParam& lam,
                              const QuadratureSpec& spec) {
    if (lam.dim != rho.dim())
        throw std::domain_error("fisher_lambda: lambda/density dimension mismatch");
    return guarded("fisher_lambda", [&]() -> FunctionalValue {
        auto num = gradient_numerator(rho, lam.value, spec);
        if (lam.shannon_limit()) return as_functional(num);
        auto den = power_integral(rho, lam.value, spec);
        if (!(den.value > 0.0))
            throw divergence_error("fisher_lambda: vanishing power integral");
        double v = num.value / den.value;
        return {v, std::fabs(v) * (rel_err(num) + rel_err(den))};
    });
}

FunctionalValue biparametric_fisher(const Density& rho, double beta, double q,
                                    const QuadratureSpec& spec) {
    if (!(beta > 0.0))
        throw std::domain_error("biparametric_fisher: beta must be > 0");
    const double rho_exp = beta * (q - 2.0) + 1.0;
    if (rho.kind() == Density::Kind::separable) {
        if (beta != 2.0)
            throw unsupported_error(
                "biparametric_fisher: separable densities support beta = 2 only");
        return guarded("biparametric_fisher", [&] {
            return as_functional(gradient_numerator(rho, q, spec));
        });
    }
    return guarded("biparametric_fisher", [&] {
        return as_functional(pointwise_integral(
            rho,
            [rho_exp, beta](double v, double dv) {
                return grad_term(v, dv, rho_exp, beta);
            },
            spec));
    });
}

FunctionalValue variance(const Density& rho, const QuadratureSpec& spec) {
    return guarded("variance", [&]() -> FunctionalValue {
        if (rho.kind() == Density::Kind::line) {
            const Profile1D& p = rho.profile();
            auto m0 = integrate_profile(
                p, [&](double x) { return std::max(p.value(x), 0.0); }, spec);
            auto m1 = integrate_profile(
                p, [&](double x) { return x * std::max(p.value(x), 0.0); }, spec);
            auto m2 = integrate_profile(
                p, [&](double x) { return x * x * std::max(p.value(x), 0.0); },
                spec);
            if (!(m0.value > 0.0))
                throw divergence_error("variance: zero mass");
            double mean = m1.value / m0.value;
            double v = m2.value / m0.value - mean * mean;
            return {v, m2.err_estimate / m0.value + 2 * std::fabs(mean) *
                                                        m1.err_estimate /
                                                        m0.value};
        }
        if (rho.kind() == Density::Kind::radial) {
            const Profile1D& p = rho.profile();
            const int d = rho.dim();
            const double sd = surface_area(d);
            auto m0 = integrate_profile(
                p,
                [&](double r) {
                    return sd * std::pow(r, d - 1) * std::max(p.value(r), 0.0);
                },
                spec);
            auto m2 = integrate_profile(
                p,
                [&](double r) {
                    return sd * std::pow(r, d + 1) * std::max(p.value(r), 0.0);
                },
                spec);
            if (!(m0.value > 0.0))
                throw divergence_error("variance: zero mass");
            // the mean sits at the center by symmetry
            return {m2.value / m0.value, m2.err_estimate / m0.value};
        }
        const Profile1D& f = rho.profile();
        const Profile1D& g = rho.polar();
        auto fr2 = sep_radial(
            f, [](double r, double v, double) { return r * r * std::max(v, 0.0); },
            spec);
        auto fr3 = sep_radial(
            f,
            [](double r, double v, double) { return r * r * r * std::max(v, 0.0); },
            spec);
        auto fr4 = sep_radial(
            f,
            [](double r, double v, double) {
                return r * r * r * r * std::max(v, 0.0);
            },
            spec);
        auto gm = sep_polar(
            g, [](double, double v, double) { return std::max(v, 0.0); }, spec);
        auto gcos = sep_polar(
            g,
            [](double t, double v, double) {
                return std::cos(t) * std::max(v, 0.0);
            },
            spec);
        double mass = fr2.value * gm.value;
        if (!(mass > 0.0)) throw divergence_error("variance: zero mass");
        double mean_z = fr3.value * gcos.value / mass;  // offset from center
        double second = fr4.value * gm.value / mass;
        return {second - mean_z * mean_z,
                fr4.err_estimate * gm.value / mass +
                    2 * std::fabs(mean_z) * fr3.err_estimate *
                        std::fabs(gcos.value) / mass};
    });
}

SeparableIntegrals separable_fisher_pieces(const Density& rho, double lambda,
                                           const QuadratureSpec& spec) {
    if (rho.kind() != Density::Kind::separable)
        throw std::domain_error(
            "separable_fisher_pieces: separable densities only");
    return guarded("separable_fisher_pieces", [&]() -> SeparableIntegrals {
        const Profile1D& f = rho.profile();
        const Profile1D& g = rho.polar();
        const double re = 2.0 * lambda - 3.0;
        auto rg = sep_radial(
            f,
            [re](double r, double v, double dv) {
                return r * r * grad_term(v, dv, re, 2.0);
            },
            spec);
        auto rhp = sep_radial(
            f,
            [lambda](double, double v, double) {
                return pow_pos(v, 2.0 * lambda - 1.0);
            },
            spec);
        auto rp = sep_radial(
            f,
            [lambda](double r, double v, double) {
                return r * r * pow_pos(v, lambda);
            },
            spec);
        auto ag = sep_polar(
            g,
            [re](double, double v, double dv) {
                return grad_term(v, dv, re, 2.0);
            },
            spec);
        auto ahp = sep_polar(
            g,
            [lambda](double, double v, double) {
                return pow_pos(v, 2.0 * lambda - 1.0);
            },
            spec);
        auto ap = sep_polar(
            g,
            [lambda](double, double v, double) { return pow_pos(v, lambda); },
            spec);
        SeparableIntegrals out;
        out.radial_gradient = rg.value;
        out.radial_high_power = rhp.value;
        out.radial_power = rp.value;
        out.angular_gradient = ag.value;
        out.angular_high_power = ahp.value;
        out.angular_power = ap.value;
        out.err_estimate = rel_err(rg) + rel_err(rhp) + rel_err(rp) +
                           rel_err(ag) + rel_err(ahp) + rel_err(ap);
        return out;
    });
}

} // namespace cfr::functionals
