#include "cfr/complexity.hpp"

#include <cmath>
#include <cstdio>

#include "cfr/specfun.hpp"

namespace cfr::complexity {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double normalization_constant(const LambdaParam& lam) {
    const double l = lam.value;
    const int d = lam.dim;
    if (lam.shannon_limit()) return 2.0 * kPi * d * std::exp(1.0);

    // tail factor [((d+2)l - d) / (2l)]^{mu/(d(l-1))}, positive for all
    // admissible lambda
    const double arg = ((d + 2.0) * l - d) / (2.0 * l);
    const double tail = std::exp(lam.mu() / (d * (l - 1.0)) * std::log(arg));

    if (l > 1.0) {
        const double z = l / (l - 1.0);
        const double gam = std::exp(
            2.0 / d * (specfun::log_gamma(z) - specfun::log_gamma(0.5 * d + z)));
        return 2.0 * kPi * d / (l * (l - 1.0)) * gam * tail;
    }
    const double z = 1.0 / (1.0 - l);
    const double gam = std::exp(
        2.0 / d * (specfun::log_gamma(z - 0.5 * d) - specfun::log_gamma(z)));
    return 2.0 * kPi * d / (l * (1.0 - l)) * gam * tail;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_json(const ComplexityReport& r) {
    std::string out = "{";
    out += "\"lambda\": " + format_number(r.lambda);
    out += ", \"dim\": " + std::to_string(r.dim);
    out += ", \"fisher_lambda\": " + format_number(r.fisher_lambda);
    out += ", \"renyi_power\": " + format_number(r.renyi_power);
    out += ", \"d_norm\": " + format_number(r.d_norm);
    out += ", \"cfr\": " + format_number(r.cfr);
    out += ", \"method\": \"" + r.method + "\"";
    out += ", \"discrepancy\": ";
    out += r.discrepancy ? format_number(*r.discrepancy) : std::string("null");
    out += ", \"err_estimate\": " + format_number(r.err_estimate);
    out += "}";
    return out;
}

ComplexityReport cfr_complexity(const Density& rho, const LambdaParam& lam,
                                const QuadratureSpec& spec) {
    ComplexityReport rep;
    rep.lambda = lam.value;
    rep.dim = lam.dim;
    auto f = functionals::fisher_lambda(rho, lam, spec);
    auto n = functionals::renyi_power(rho, lam, spec);
    rep.fisher_lambda = f.value;
    rep.renyi_power = n.value;
    rep.d_norm = normalization_constant(lam);
    rep.cfr = f.value * n.value / rep.d_norm;
    rep.method = "quadrature";
    double rf = f.value != 0.0 ? std::fabs(f.err_estimate / f.value) : 0.0;
    double rn = n.value != 0.0 ? std::fabs(n.err_estimate / n.value) : 0.0;
    rep.err_estimate = std::fabs(rep.cfr) * (rf + rn);
    return rep;
}

double cramer_rao(const Density& rho, const QuadratureSpec& spec) {
    auto f = functionals::fisher_standard(rho, spec);
    auto v = functionals::variance(rho, spec);
    return f.value * v.value;
}

double fisher_shannon(const Density& rho, const QuadratureSpec& spec) {
    auto f = functionals::fisher_standard(rho, spec);
    LambdaParam one(1.0, rho.dim());
    auto n = functionals::renyi_power(rho, one, spec);
    return f.value * n.value;
}

} // namespace cfr::complexity
