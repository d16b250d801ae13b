#include "cfr/quadrature.hpp"
#include "cfr/errors.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace cfr::quadrature {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b;
    double value;
    double err;
    bool tainted;  // some sample was non-finite; never trust its estimate
};

bool worse(const Segment& x, const Segment& y) {
    if (x.err != y.err)
        return x.err < y.err;
    return x.a > y.a;  // deterministic tie-break
}

// One G7/K15 application on [a, b] with the QUADPACK error heuristic.
Segment kronrod15(const Integrand& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::fabs(hlgth);

    bool tainted = false;
    auto sample = [&](double x) {
        double v = f(x);
        if (!std::isfinite(v)) {
            tainted = true;
            return 0.0;
        }
        return v;
    };

    double fv1[7], fv2[7];
    double fc = sample(centr);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        double absc = hlgth * xgk[j];
        fv1[j] = sample(centr - absc);
        fv2[j] = sample(centr + absc);
        double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1)  // xgk[1], xgk[3], ... are the Gauss abscissae
            resg += wg[j / 2] * fsum;
        resk += wgk[j] * fsum;
        resabs += wgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    }
    double reskh = resk * 0.5;
    double resasc = wgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    double result = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double abserr = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0)
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    if (resabs > DBL_MIN / (50.0 * DBL_EPSILON))
        abserr = std::max(DBL_EPSILON * 50.0 * resabs, abserr);
    if (tainted)
        abserr = std::max(abserr, std::fabs(result));
    return {a, b, result, abserr, tainted};
}

void validate(const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw std::domain_error("quadrature: tolerances must be positive");
    if (spec.max_subdivisions < 1)
        throw std::domain_error("quadrature: max_subdivisions must be >= 1");
}

QuadratureResult adapt(const Integrand& f, double a, double b,
                       const QuadratureSpec& spec) {
    std::vector<double> cuts{a};
    for (double bp : spec.breakpoints)
        if (bp > a && bp < b)
            cuts.push_back(bp);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment, std::vector<Segment>, decltype(&worse)> heap(&worse);
    std::vector<Segment> frozen;  // too narrow to split further
    double total = 0.0, total_err = 0.0;
    auto push = [&](Segment s) {
        total += s.value;
        total_err += s.err;
        double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b)
            frozen.push_back(s);
        else
            heap.push(s);
    };
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        push(kronrod15(f, cuts[i], cuts[i + 1]));

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (heap.empty() || splits >= spec.max_subdivisions) {
            throw convergence_error(
                "quadrature did not converge: error estimate " + std::to_string(total_err)
                    + " above tolerance after " + std::to_string(splits) + " subdivisions"
                    + (heap.empty() ? " (remaining segments unsplittable)" : ""),
                total, total_err);
        }
        Segment s = heap.top();
        heap.pop();
        total -= s.value;
        total_err -= s.err;
        double mid = 0.5 * (s.a + s.b);
        push(kronrod15(f, s.a, mid));
        push(kronrod15(f, mid, s.b));
        ++splits;
    }
    return {total, total_err};
}

} // namespace

QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureSpec& spec) {
    validate(spec);
    if (!(a < b)) {
        if (a == b)
            return {0.0, 0.0};
        throw std::domain_error("integrate_interval: need a < b");
    }
    return adapt(f, a, b, spec);
}

QuadratureResult integrate_semi_infinite(const Integrand& f,
                                         const QuadratureSpec& spec) {
    validate(spec);
    auto g = [&f](double t) {
        double om = 1.0 - t;
        double x = t / om;
        return f(x) / (om * om);
    };
    QuadratureSpec mapped = spec;
    mapped.breakpoints.clear();
    for (double bp : spec.breakpoints)
        if (bp > 0.0 && std::isfinite(bp))
            mapped.breakpoints.push_back(bp / (1.0 + bp));
    return adapt(g, 0.0, 1.0, mapped);
}

} // namespace cfr::quadrature
