#include "cfr/hydrogenic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cfr/errors.hpp"
#include "cfr/specfun.hpp"

namespace cfr::hydrogenic {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

QuantumNumbers::QuantumNumbers(int n, int l, int m, double Z)
    : n(n), l(l), m(m), Z(Z) {
    if (n < 1) throw std::domain_error("QuantumNumbers: n must be >= 1");
    if (l < 0 || l > n - 1)
        throw std::domain_error("QuantumNumbers: l must be in [0, n-1]");
    if (std::abs(m) > l)
        throw std::domain_error("QuantumNumbers: |m| must be <= l");
    if (!(Z > 0.0)) throw std::domain_error("QuantumNumbers: Z must be > 0");
}

double QuantumNumbers::energy() const { return -Z * Z / (2.0 * n * n); }
bool QuantumNumbers::circular() const {
    return l == n - 1 && std::abs(m) == l;
}
int QuantumNumbers::radial_nodes() const { return n - l - 1; }
int QuantumNumbers::polar_nodes() const { return l - std::abs(m); }

// --- density -----------------------------------------------------------------

Density density(const QuantumNumbers& qn) {
    const int n = qn.n, l = qn.l, k = n - l - 1;
    const double a = 2.0 * l + 1.0;
    const double Z = qn.Z;
    const double s = 2.0 * Z / n;                    // rt = s * r
    const double pref = 4.0 * Z * Z * Z / std::pow(n, 4);

    densities::Profile1D f;
    f.value = [=](double r) {
        double rt = s * r;
        auto L = specfun::laguerre_orthonormal(k, a, rt);
        return pref * std::pow(rt, 2 * l) * std::exp(-rt) * L.value * L.value;
    };
    f.deriv = [=](double r) {
        double rt = s * r;
        auto L = specfun::laguerre_orthonormal(k, a, rt);
        double poly = l > 0 ? 2.0 * l * std::pow(rt, 2 * l - 1) * L.value * L.value
                            : 0.0;
        poly += std::pow(rt, 2 * l) *
                (2.0 * L.value * L.derivative - L.value * L.value);
        return s * pref * std::exp(-rt) * poly;
    };
    f.domain = {0.0, std::numeric_limits<double>::infinity()};
    for (double z : specfun::laguerre_zeros(k, a)) f.breakpoints.push_back(z / s);
    f.breakpoints.push_back(1.0 / s);
    f.breakpoints.push_back(2.0 * n / s);
    f.breakpoints.push_back(4.0 * n / s);

    specfun::AngularDensity ang(l, qn.m);
    densities::Profile1D g;
    g.value = [ang](double th) { return ang.eval(th).value; };
    g.deriv = [ang](double th) { return ang.eval(th).derivative; };
    g.domain = {0.0, kPi};
    g.breakpoints = ang.theta_nodes();
    g.breakpoints.push_back(0.5 * kPi);

    return Density::separable(std::move(f), std::move(g));
}

// --- Laguerre product moments --------------------------------------------------

double laguerre_product_moment(int power,
                               const std::vector<LaguerreFactor>& factors) {
    if (power < 0)
        throw std::domain_error("laguerre_product_moment: power must be >= 0");
    std::vector<int> deg;
    std::vector<double> alpha, scale;
    for (const auto& f : factors) {
        if (f.count < 0)
            throw std::domain_error("laguerre_product_moment: negative count");
        if (f.degree < -1)
            throw std::domain_error("laguerre_product_moment: degree < -1");
        if (f.degree == -1 && f.count > 0) return 0.0;  // zero polynomial
        for (int i = 0; i < f.count; ++i) {
            deg.push_back(f.degree);
            alpha.push_back(f.alpha);
            scale.push_back(f.scale);
        }
    }

    double pref = specfun::pochhammer(1.0, power);  // power!
    for (size_t i = 0; i < deg.size(); ++i)
        pref *= specfun::binomial_general(deg[i] + alpha[i], deg[i]);

    // finite multi-index sum; compensated accumulation
    double total = 0.0, comp = 0.0;
    std::vector<int> idx(deg.size(), 0);
    while (true) {
        int J = 0;
        for (int j : idx) J += j;
        double term = specfun::pochhammer(power + 1.0, J);
        for (size_t i = 0; i < idx.size(); ++i) {
            int j = idx[i];
            term *= specfun::pochhammer(-deg[i], j) /
                    (specfun::pochhammer(alpha[i] + 1.0, j) *
                     specfun::pochhammer(1.0, j)) *
                    std::pow(scale[i], j);
        }
        double y = term - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;

        size_t p = 0;
        for (; p < idx.size(); ++p) {
            if (++idx[p] <= deg[p]) break;
            idx[p] = 0;
        }
        if (p == idx.size()) break;
    }
    return pref * total;
}

// --- closed radial integrals ---------------------------------------------------

namespace {

struct ClosedDomain {
    int two_lam;
    int k;  // radial nodes
};

ClosedDomain check_closed_domain(int n, int l, double lambda) {
    long tl = std::llround(2.0 * lambda);
    if (std::fabs(2.0 * lambda - tl) > 1e-9 || tl < 2)
        throw unsupported_error(
            "closed radial path needs 2*lambda to be an integer >= 2");
    int k = n - l - 1;
    if (k >= 1 && tl % 2 != 0)
        throw unsupported_error(
            "closed radial path with radial nodes needs integer lambda "
            "(odd Laguerre powers would be integrated with sign)");
    return {static_cast<int>(tl), k};
}

} // namespace

double gradient_moment_sum(int n, int l, double lambda) {
    auto dom = check_closed_domain(n, l, lambda);
    const int k = dom.k;
    const int r1 = 2 * (dom.two_lam - 1);
    const double om = 2.0 * lambda - 1.0;
    const double t1 = 1.0 / om;
    const double a = 2.0 * l + 1.0;
    const int mu0 = 2 * l * (dom.two_lam - 1);

    std::vector<LaguerreFactor> base{{r1, k, a, t1}};
    std::vector<LaguerreFactor> two_rep{{r1 - 2, k, a, t1}, {2, k - 1, a + 1, t1}};
    std::vector<LaguerreFactor> one_rep{{r1 - 1, k, a, t1}, {1, k - 1, a + 1, t1}};

    double G = 4.0 * l * l * laguerre_product_moment(mu0, base);
    G += laguerre_product_moment(mu0 + 2, base) / (om * om);
    G -= 4.0 * l / om * laguerre_product_moment(mu0 + 1, base);
    G += 4.0 / (om * om) * laguerre_product_moment(mu0 + 2, two_rep);
    G -= 8.0 * l / om * laguerre_product_moment(mu0 + 1, one_rep);
    G += 4.0 / (om * om) * laguerre_product_moment(mu0 + 2, one_rep);
    return G;
}

RadialIntegrals radial_integrals_closed(const QuantumNumbers& qn, double lambda) {
    auto dom = check_closed_domain(qn.n, qn.l, lambda);
    const int n = qn.n, l = qn.l, k = dom.k;
    const double Z = qn.Z;
    const double om = 2.0 * lambda - 1.0;
    const double a = 2.0 * l + 1.0;
    const int mu0 = 2 * l * (dom.two_lam - 1);
    const double ratio =
        specfun::log_gamma(n - l) - specfun::log_gamma(n + l + 1);
    const double ln2 = std::log(2.0), lnn = std::log((double)n),
                 lnZ = std::log(Z);

    const double lp1 = (4.0 * lambda - 3.0) * ln2 + (6.0 * lambda - 4.0) * lnZ -
                       (8.0 * lambda - 5.0) * lnn + (2.0 * lambda - 1.0) * ratio -
                       (mu0 + 1.0) * std::log(om);
    std::vector<LaguerreFactor> base{{2 * (dom.two_lam - 1), k, a, 1.0 / om}};

    RadialIntegrals out;
    out.gradient = std::exp(lp1) * gradient_moment_sum(n, l, lambda);
    out.high_power = std::exp(lp1) * laguerre_product_moment(mu0, base);

    const int mu2 = l * dom.two_lam + 2;
    const double lp2 = (2.0 * lambda - 3.0) * ln2 + 3.0 * (lambda - 1.0) * lnZ -
                       (4.0 * lambda - 3.0) * lnn + lambda * ratio -
                       (2.0 * l * lambda + 3.0) * std::log(lambda);
    std::vector<LaguerreFactor> pw{{dom.two_lam, k, a, 1.0 / lambda}};
    out.power = std::exp(lp2) * laguerre_product_moment(mu2, pw);
    return out;
}

// --- circular closed pieces -----------------------------------------------------

SeparableIntegrals circular_pieces_closed(int n, double lambda, double Z) {
    if (n < 1) throw std::domain_error("circular_pieces_closed: n >= 1");
    const double L = lambda;
    const double om = 2.0 * L - 1.0;
    const double g1 = 3.0 - 2.0 * n + 4.0 * L * (n - 1.0);
    const double g2 = 2.0 - n + 2.0 * L * (n - 1.0);
    if (!(om > 0.0) || !(g1 > 0.0) || !(g2 > 0.0))
        throw divergence_error(
            "circular_pieces_closed: integral diverges for this lambda");
    const double ln2 = std::log(2.0), lnpi = std::log(kPi),
                 lnn = std::log((double)n), lnZ = std::log(Z),
                 lnom = std::log(om), lnl = std::log(L);
    const double lg_n = specfun::log_gamma(n);
    const double lg_2n = specfun::log_gamma(2.0 * n);
    const double lg_nh = specfun::log_gamma(n + 0.5);

    SeparableIntegrals p;
    p.radial_gradient =
        std::exp((4.0 * L - 2.0) * ln2 + (6.0 * L - 4.0) * lnZ -
                 (8.0 * L - 5.0) * lnn + std::log(2.0 * L * (n - 1.0) - n + 2.0) +
                 (4.0 * L * (1.0 - n) + 2.0 * n - 5.0) * lnom +
                 specfun::log_gamma(g1) - (2.0 * L - 1.0) * lg_2n);
    p.radial_high_power =
        std::exp((4.0 * L - 3.0) * ln2 + (6.0 * L - 4.0) * lnZ -
                 (8.0 * L - 5.0) * lnn +
                 (4.0 * L * (1.0 - n) + 2.0 * n - 3.0) * lnom +
                 specfun::log_gamma(g1) - (2.0 * L - 1.0) * lg_2n);
    p.radial_power =
        std::exp((2.0 * L - 3.0) * ln2 + 3.0 * (L - 1.0) * lnZ -
                 (4.0 * L - 3.0) * lnn - (2.0 * L * (n - 1.0) + 3.0) * lnl +
                 specfun::log_gamma(2.0 * (n - 1.0) * L + 3.0) - L * lg_2n);
    p.angular_high_power =
        std::exp(2.0 * (1.0 - L) * ln2 + 3.0 * (1.0 - L) * lnpi +
                 (2.0 * L - 1.0) * (lg_nh - lg_n) + specfun::log_gamma(g2) -
                 specfun::log_gamma(g2 + 0.5));
    p.angular_gradient =
        n == 1 ? 0.0
               : std::exp((3.0 - 2.0 * L) * ln2 + 3.0 * (1.0 - L) * lnpi +
                          2.0 * std::log(n - 1.0) +
                          (2.0 * L - 1.0) * (lg_nh - lg_n) +
                          specfun::log_gamma(om * (n - 1.0)) -
                          specfun::log_gamma(2.0 * L * (n - 1.0) - n + 2.5));
    p.angular_power =
        std::exp((1.0 - L) * ln2 + 1.5 * (1.0 - L) * lnpi +
                 L * (lg_nh - lg_n) + specfun::log_gamma(1.0 + L * (n - 1.0)) -
                 specfun::log_gamma(1.5 + L * (n - 1.0)));
    p.err_estimate = 0.0;
    return p;
}

SeparableIntegrals sharp_pieces_closed(int n, double lambda, double Z) {
    if (n < 1) throw std::domain_error("sharp_pieces_closed: n >= 1");
    QuantumNumbers qn(n, 0, 0, Z);
    RadialIntegrals rad = radial_integrals_closed(qn, lambda);
    SeparableIntegrals p;
    p.radial_gradient = rad.gradient;
    p.radial_high_power = rad.high_power;
    p.radial_power = rad.power;
    const double four_pi = 4.0 * kPi;
    p.angular_gradient = 0.0;  // the angular factor is constant
    p.angular_high_power = std::pow(four_pi, 2.0 - 2.0 * lambda);
    p.angular_power = std::pow(four_pi, 1.0 - lambda);
    p.err_estimate = 0.0;
    return p;
}

// --- product forms ---------------------------------------------------------------

double cfr_ground_product_form(double lambda) {
    LambdaParam lam(lambda, 3);
    if (lam.shannon_limit())
        throw unsupported_error("product form needs lambda != 1");
    double v = 4.0 * std::pow(kPi, 2.0 / 3.0) *
               std::exp((2.0 / (lambda - 1.0) + 6.0) * std::log(lambda)) /
               std::pow(2.0 * lambda - 1.0, 3.0);
    return v / complexity::normalization_constant(lam);
}

double cfr_circular_product_form(int n, double lambda) {
    LambdaParam lam(lambda, 3);
    if (lam.shannon_limit())
        throw unsupported_error("product form needs lambda != 1");
    const double L = lambda;
    const double E = 2.0 / (3.0 * (L - 1.0));
    const double g2 = 2.0 - n + 2.0 * L * (n - 1.0);
    const double lnv =
        (19.0 / 3.0 - 4.0 * L + E + n * (4.0 * L - 2.0)) * std::log(2.0) +
        0.5 * std::log(kPi) -
        (2.0 / (3.0 * (1.0 - L)) - 5.0 / 3.0) * std::log((double)n) +
        2.0 * (3.0 * L - 2.0) * (2.0 * L * (n - 1.0) + 3.0) /
            (3.0 * (L - 1.0)) * std::log(L) +
        (4.0 * L * (1.0 - n) + 2.0 * n - 5.0) * std::log(2.0 * L - 1.0) +
        (E + 5.0 / 3.0) * (specfun::log_gamma(n) + specfun::log_gamma(2.0 * n)) +
        2.0 * specfun::log_gamma(g2) -
        (3.0 - 5.0 * L) / (3.0 * (1.0 - L)) * specfun::log_gamma(n + 0.5) +
        2.0 * (1.0 / (3.0 * (L - 1.0)) + 1.0) *
            (specfun::log_gamma(1.5 + L * (n - 1.0)) -
             specfun::log_gamma(1.0 + L * (n - 1.0)) -
             specfun::log_gamma(3.0 + 2.0 * L * (n - 1.0)));
    return std::exp(lnv) / complexity::normalization_constant(lam);
}

double cfr_sharp_product_form(int n, double lambda) {
    LambdaParam lam(lambda, 3);
    if (lam.shannon_limit())
        throw unsupported_error("product form needs lambda != 1");
    auto dom = check_closed_domain(n, 0, lambda);
    const double L = lambda;
    const double E2 = 2.0 * (1.0 / (3.0 * (1.0 - L)) - 1.0);
    std::vector<LaguerreFactor> pw{{dom.two_lam, n - 1, 1.0, 1.0 / L}};
    const double phi2 = laguerre_product_moment(2, pw);
    const double G = gradient_moment_sum(n, 0, lambda);
    const double lnF = E2 * std::log(phi2) + std::log(G);
    const double lnv =
        (3.0 + 2.0 / (3.0 * (L - 1.0))) * std::log(2.0) +
        2.0 / 3.0 * std::log(kPi) +
        2.0 / 3.0 * (2.0 / (L - 1.0) + 5.0) * std::log((double)n) +
        (2.0 / (L - 1.0) + 6.0) * std::log(L) - std::log(2.0 * L - 1.0) + lnF;
    return std::exp(lnv) / complexity::normalization_constant(lam);
}

// --- reports ----------------------------------------------------------------------

namespace {

ComplexityReport report_from_pieces(const SeparableIntegrals& p,
                                    const LambdaParam& lam,
                                    const char* method) {
    const double I1 = p.radial_gradient * p.angular_high_power +
                      p.radial_high_power * p.angular_gradient;
    const double I2 = p.radial_power * p.angular_power;
    if (!(I2 > 0.0))
        throw divergence_error("hydrogenic pieces: vanishing power integral");
    ComplexityReport rep;
    rep.lambda = lam.value;
    rep.dim = 3;
    rep.fisher_lambda = I1 / I2;
    const double expo = (lam.mu() / 3.0) / (1.0 - lam.value);
    rep.renyi_power = std::exp(expo * std::log(I2));
    rep.d_norm = complexity::normalization_constant(lam);
    rep.cfr = rep.fisher_lambda * rep.renyi_power / rep.d_norm;
    rep.method = method;
    rep.err_estimate = std::fabs(rep.cfr) * p.err_estimate;
    return rep;
}

void require_dim3(const LambdaParam& lam) {
    if (lam.dim != 3)
        throw std::domain_error("hydrogenic states live in dimension 3");
}

} // namespace

ComplexityReport cfr_numeric(const QuantumNumbers& qn, const LambdaParam& lam,
                             const QuadratureSpec& spec) {
    require_dim3(lam);
    if ((qn.radial_nodes() >= 1 || qn.polar_nodes() >= 1) && lam.value <= 0.75)
        throw divergence_error(
            "gradient integral diverges at the density nodes of this state for "
            "lambda <= 3/4");
    Density rho = density(qn);
    if (lam.shannon_limit()) {
        auto f = functionals::fisher_standard(rho, spec);
        auto nn = functionals::renyi_power(rho, lam, spec);
        ComplexityReport rep;
        rep.lambda = lam.value;
        rep.dim = 3;
        rep.fisher_lambda = f.value;
        rep.renyi_power = nn.value;
        rep.d_norm = complexity::normalization_constant(lam);
        rep.cfr = f.value * nn.value / rep.d_norm;
        rep.method = "quadrature";
        double rf = f.value != 0 ? std::fabs(f.err_estimate / f.value) : 0;
        double rn = nn.value != 0 ? std::fabs(nn.err_estimate / nn.value) : 0;
        rep.err_estimate = std::fabs(rep.cfr) * (rf + rn);
        return rep;
    }
    auto pieces = functionals::separable_fisher_pieces(rho, lam.value, spec);
    return report_from_pieces(pieces, lam, "quadrature");
}

std::optional<ComplexityReport> cfr_closed(const QuantumNumbers& qn,
                                           const LambdaParam& lam) {
    require_dim3(lam);
    if (lam.shannon_limit()) return std::nullopt;
    if (qn.circular()) {
        return report_from_pieces(circular_pieces_closed(qn.n, lam.value, qn.Z),
                                  lam, "analytic");
    }
    if (qn.l == 0) {
        long tl = std::llround(2.0 * lam.value);
        bool in_domain = std::fabs(2.0 * lam.value - tl) <= 1e-9 && tl >= 2 &&
                         (qn.n == 1 || tl % 2 == 0);
        if (in_domain)
            return report_from_pieces(
                sharp_pieces_closed(qn.n, lam.value, qn.Z), lam, "analytic");
    }
    return std::nullopt;
}

ComplexityReport cfr_report(const QuantumNumbers& qn, const LambdaParam& lam,
                            Method method, const QuadratureSpec& spec) {
    switch (method) {
    case Method::quadrature:
        return cfr_numeric(qn, lam, spec);
    case Method::analytic: {
        auto closed = cfr_closed(qn, lam);
        if (!closed)
            throw unsupported_error(
                "no closed form covers this state and lambda; use the "
                "quadrature method");
        return *closed;
    }
    case Method::both: {
        auto closed = cfr_closed(qn, lam);
        auto quad = cfr_numeric(qn, lam, spec);
        if (!closed) return quad;  // caller may report the fallback
        ComplexityReport rep = *closed;
        rep.method = "both";
        rep.discrepancy = std::fabs(rep.cfr - quad.cfr) / std::fabs(rep.cfr);
        rep.err_estimate = quad.err_estimate;
        return rep;
    }
    }
    throw std::domain_error("cfr_report: unknown method");
}

} // namespace cfr::hydrogenic
