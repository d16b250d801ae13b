#include "cfr/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfr::specfun {

namespace {

// Godfrey's 15-term Lanczos coefficient set, g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2*pi)/2

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");
    // Recurrence lnG(x) = lnG(x+1) - ln(x) keeps the Lanczos sum in its
    // accurate range for small arguments.
    if (x < 0.5)
        return log_gamma(x + 1.0) - std::log(x);
    double z = x - 1.0;
    double sum = kLanczos[0];
    for (int k = 1; k < 15; ++k)
        sum += kLanczos[k] / (z + k);
    double t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double pochhammer(double a, int k) {
    if (k < 0)
        throw std::domain_error("pochhammer: k must be non-negative");
    double p = 1.0;
    for (int i = 0; i < k; ++i)
        p *= a + i;
    return p;
}

double binomial_general(double top, int bottom) {
    if (bottom < 0)
        return 0.0;
    if (bottom == 0)
        return 1.0;
    // Non-negative integer top with bottom > top gives 0 through the product
    // below anyway (a factor hits zero), so no special case is needed.
    double num = 1.0;
    for (int i = 0; i < bottom; ++i)
        num *= top - i;
    double den = 1.0;
    for (int i = 2; i <= bottom; ++i)
        den *= i;
    return num / den;
}

PolyValue laguerre(int n, double alpha, double x) {
    if (alpha <= -1.0)
        throw std::domain_error("laguerre: alpha must exceed -1");
    if (n < 0)
        return {0.0, 0.0};
    if (n == 0)
        return {1.0, 0.0};
    double pm1 = 1.0;
    double p = 1.0 + alpha - x;
    for (int k = 2; k <= n; ++k) {
        double next = ((2.0 * k - 1.0 + alpha - x) * p - (k - 1.0 + alpha) * pm1) / k;
        pm1 = p;
        p = next;
    }
    // d/dx L_n^(a) = -L_{n-1}^(a+1)
    double d = -laguerre(n - 1, alpha + 1.0, x).value;
    return {p, d};
}

PolyValue laguerre_orthonormal(int n, double alpha, double x) {
    if (alpha <= -1.0)
        throw std::domain_error("laguerre_orthonormal: alpha must exceed -1");
    if (n < 0)
        return {0.0, 0.0};
    double c = std::exp(0.5 * (log_gamma(n + 1.0) - log_gamma(n + alpha + 1.0)));
    PolyValue v = laguerre(n, alpha, x);
    return {c * v.value, c * v.derivative};
}

namespace {

// Bisection on [lo, hi] where f changes sign; deterministic.
template <typename F>
double bisect(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        double fm = f(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <typename F>
std::vector<double> scan_zeros(F&& f, double lo, double hi, int cells) {
    std::vector<double> zeros;
    double prev_x = lo, prev_f = f(lo);
    if (prev_f == 0.0)
        zeros.push_back(prev_x);
    for (int i = 1; i <= cells; ++i) {
        double x = lo + (hi - lo) * i / cells;
        double fx = f(x);
        // An exact zero at a grid node is recorded once here; transitions in
        // or out of it must not also count as sign changes.
        if (fx == 0.0)
            zeros.push_back(x);
        else if (prev_f != 0.0 && (prev_f < 0.0) != (fx < 0.0))
            zeros.push_back(bisect(f, prev_x, x));
        prev_x = x;
        prev_f = fx;
    }
    return zeros;
}

} // namespace

std::vector<double> laguerre_zeros(int n, double alpha) {
    if (n <= 0)
        return {};
    // All zeros of L_n^(a) lie below 2n + alpha + 1 + 2*sqrt(...); the simple
    // bound 2*(2n + alpha + 2) is comfortable for the small degrees in scope.
    double hi = 2.0 * (2.0 * n + alpha + 2.0);
    auto f = [&](double x) { return laguerre(n, alpha, x).value; };
    auto zeros = scan_zeros(f, 1e-12, hi, std::max(400, 40 * n));
    if ((int)zeros.size() != n)
        throw std::runtime_error("laguerre_zeros: scan missed a zero");
    return zeros;
}

PolyValue gegenbauer(int n, double mu, double x) {
    if (n < 0)
        return {0.0, 0.0};
    if (n == 0)
        return {1.0, 0.0};
    double pm1 = 1.0;
    double p = 2.0 * mu * x;
    for (int k = 2; k <= n; ++k) {
        double next = (2.0 * x * (k + mu - 1.0) * p - (k + 2.0 * mu - 2.0) * pm1) / k;
        pm1 = p;
        p = next;
    }
    // d/dx C_n^(mu) = 2 mu C_{n-1}^(mu+1)
    double d = 2.0 * mu * gegenbauer(n - 1, mu + 1.0, x).value;
    return {p, d};
}

std::vector<double> gegenbauer_zeros(int n, double mu) {
    if (n <= 0)
        return {};
    auto f = [&](double x) { return gegenbauer(n, mu, x).value; };
    auto zeros = scan_zeros(f, -1.0 + 1e-12, 1.0 - 1e-12, std::max(400, 40 * n));
    if ((int)zeros.size() != n)
        throw std::runtime_error("gegenbauer_zeros: scan missed a zero");
    return zeros;
}

AngularDensity::AngularDensity(int l, int m) : l_(l), m_(std::abs(m)) {
    if (l < 0 || m_ > l)
        throw std::domain_error("AngularDensity: need l >= 0 and |m| <= l");
    // Squared prefactor of Y_lm in Gegenbauer form:
    //   (l+1/2) (l-|m|)! Gamma(|m|+1/2)^2 / (2^{1-2|m|} pi^2 (l+|m|)!)
    double ln = std::log(l_ + 0.5) + log_gamma(l_ - m_ + 1.0) + 2.0 * log_gamma(m_ + 0.5)
              - (1.0 - 2.0 * m_) * std::log(2.0) - 2.0 * std::log(M_PI)
              - log_gamma(l_ + m_ + 1.0);
    norm_ = std::exp(ln);
}

PolyValue AngularDensity::eval(double theta) const {
    int k = l_ - m_;
    double mu = m_ + 0.5;
    double s = std::sin(theta), c = std::cos(theta);
    PolyValue g = gegenbauer(k, mu, c);
    double sm = (m_ > 0) ? std::pow(s, 2 * m_) : 1.0;
    double value = norm_ * sm * g.value * g.value;
    double dpoly = -s * g.derivative;  // d/dtheta of C(cos theta)
    double dsm = 0.0;
    if (m_ > 0)
        dsm = 2.0 * m_ * std::pow(s, 2 * m_ - 1) * c;
    double deriv = norm_ * (dsm * g.value * g.value + sm * 2.0 * g.value * dpoly);
    return {value, deriv};
}

std::vector<double> AngularDensity::theta_nodes() const {
    int k = l_ - m_;
    if (k <= 0)
        return {};
    auto xs = gegenbauer_zeros(k, m_ + 0.5);
    std::vector<double> thetas;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)  // acos reverses order
        thetas.push_back(std::acos(*it));
    return thetas;
}

} // namespace cfr::specfun
