#include "cfr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfr/complexity.hpp"
#include "cfr/density.hpp"
#include "cfr/errors.hpp"
#include "cfr/functionals.hpp"
#include "cfr/hydrogenic.hpp"
#include "cfr/quadrature.hpp"

namespace cfr::verify {
namespace {

using complexity::ComplexityReport;
using densities::Density;
using functionals::LambdaParam;
using quadrature::QuadratureSpec;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// The truncated trig arch (2/pi) sin^2 on [-pi, 0]: bounded support with
// quadratic edges, the workhorse bounded test density. It is exactly the
// unperturbed half of the near-continuity pair.
Density make_arch() { return densities::near_continuity_pair(0.5).first; }

// C_FR at library-default tolerances, falling back to a looser target when
// the profile has an integrable edge singularity too steep for the default
// goal (possible for compact supports once 2*lambda - 1 < 1/kappa + eps; the
// mass within one ulp of a nonzero edge coordinate is below double
// resolution). The loose pass is plenty for checks whose margins are >> 1e-4.
ComplexityReport cfr_or_loose(const Density& rho, const LambdaParam& lam) {
    try {
        return complexity::cfr_complexity(rho, lam, QuadratureSpec{});
    } catch (const divergence_error&) {
        QuadratureSpec loose;
        loose.rel_tol = 1e-5;
        return complexity::cfr_complexity(rho, lam, loose);
    }
}

CheckResult run_check(const std::string& name, const std::function<CheckResult()>& fn) {
    try {
        CheckResult r = fn();
        r.name = name;
        return r;
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

// --- bounds -----------------------------------------------------------------

CheckResult check_minimizers_sharp() {
    struct Case { double lambda; int dim; };
    const Case cases[] = {{1.5, 1}, {2.0, 1}, {0.8, 1}, {2.0, 3}, {1.25, 3}};
    double worst = 0.0;
    std::string worst_id;
    for (const auto& c : cases) {
        auto gg = densities::make_generalized_gaussian(c.lambda, c.dim);
        auto rep = complexity::cfr_complexity(gg.density, LambdaParam(c.lambda, c.dim),
                                              QuadratureSpec{});
        double dev = std::fabs(rep.cfr - 1.0);
        if (dev >= worst) {
            worst = dev;
            worst_id = "lambda=" + num(c.lambda) + ",d=" + std::to_string(c.dim);
        }
    }
    bool ok = worst <= 1e-6;
    return {"", ok, "max |C-1| = " + num(worst) + " at " + worst_id +
                        " over 5 extremal densities (tol 1e-6)"};
}

CheckResult check_lower_bound_battery() {
    auto arch = make_arch();
    struct Entry { std::string name; Density rho; int dim; };
    const std::vector<Entry> battery = {
        {"gauss(1,0)", densities::gaussian_line(1.0, 0.0), 1},
        {"gauss(0.3,2)", densities::gaussian_line(0.3, 2.0), 1},
        {"B1.5-1d", densities::make_generalized_gaussian(1.5, 1).density, 1},
        {"B0.8-1d", densities::make_generalized_gaussian(0.8, 1).density, 1},
        {"trig-arch", arch, 1},
        {"arch-x2", densities::replicate_1d(arch, 2), 1},
        {"gauss-3d", densities::gaussian_radial(3, 1.0), 3},
        {"hyd-1s", hydrogenic::density({1, 0, 0}), 3},
        {"hyd-2p", hydrogenic::density({2, 1, 1}), 3},
        {"hyd-3d", hydrogenic::density({3, 2, 2}), 3},
    };
    const double lambdas[] = {0.8, 1.0, 1.2, 1.5, 2.5};
    int combos = 0;
    double min_c = 1e300;
    std::string min_id;
    for (const auto& e : battery) {
        for (double lv : lambdas) {
            auto rep = cfr_or_loose(e.rho, LambdaParam(lv, e.dim));
            ++combos;
            if (rep.cfr < min_c) {
                min_c = rep.cfr;
                min_id = e.name + "@lambda=" + num(lv);
            }
        }
    }
    bool ok = combos == 50 && min_c >= 1.0 - 1e-6;
    return {"", ok, std::to_string(combos) + " density/order combinations, min C = " +
                        num(min_c) + " at " + min_id + " (bound 1 - 1e-6)"};
}

// --- closed forms -------------------------------------------------------------

CheckResult check_dual_path_agreement() {
    struct Row { hydrogenic::QuantumNumbers qn; double lambda; double closed; };
    std::vector<Row> rows;
    for (double lv : {1.2, 1.5, 2.0, 3.0})
        rows.push_back({{1, 0, 0}, lv, hydrogenic::cfr_ground_product_form(lv)});
    for (int n : {1, 2, 3})
        for (double lv : {1.25, 2.0})
            rows.push_back({{n, n - 1, n - 1}, lv,
                            hydrogenic::cfr_circular_product_form(n, lv)});
    for (int n : {1, 2, 3})
        rows.push_back({{n, 0, 0}, 2.0, hydrogenic::cfr_sharp_product_form(n, 2.0)});

    double worst = 0.0, worst_pieces = 0.0;
    std::string worst_id;
    for (const auto& r : rows) {
        LambdaParam lam(r.lambda, 3);
        auto numeric = hydrogenic::cfr_numeric(r.qn, lam, QuadratureSpec{});
        double rel = std::fabs(numeric.cfr - r.closed) / std::fabs(r.closed);
        if (rel >= worst) {
            worst = rel;
            worst_id = "(" + std::to_string(r.qn.n) + "," + std::to_string(r.qn.l) +
                       "," + std::to_string(r.qn.m) + ")@lambda=" + num(r.lambda);
        }
        if (auto closed = hydrogenic::cfr_closed(r.qn, lam))
            worst_pieces = std::max(
                worst_pieces, std::fabs(closed->cfr - r.closed) / std::fabs(r.closed));
    }
    bool ok = worst <= 1e-6 && worst_pieces <= 1e-11;
    return {"", ok, std::to_string(rows.size()) +
                        " states, max closed-vs-quadrature rel diff = " + num(worst) +
                        " at " + worst_id + " (tol 1e-6); max pieces-vs-product rel diff = " +
                        num(worst_pieces) + " (tol 1e-11)"};
}

CheckResult check_closed_form_identities() {
    // Weighted moment of four degree-0 Laguerre factors: the polynomial part
    // is identically 1, so the moment is Gamma(3) = 2 exactly.
    double phi = hydrogenic::laguerre_product_moment(2, {{4, 0, 1.0, 0.5}});
    double d_phi = std::fabs(phi - 2.0);

    // Ground-state gradient moment sum at lambda = 2: 2 (2 lambda - 1)^{-2}.
    double g = hydrogenic::gradient_moment_sum(1, 0, 2.0);
    double d_g = std::fabs(g - 2.0 / 9.0) / (2.0 / 9.0);

    // The l = 0 closed form at n = 1 must reduce to the ground-state literal.
    double d_ns = 0.0;
    for (double lv : {1.5, 2.0, 2.5}) {
        double a = hydrogenic::cfr_sharp_product_form(1, lv);
        double b = hydrogenic::cfr_ground_product_form(lv);
        d_ns = std::max(d_ns, std::fabs(a / b - 1.0));
    }
    bool ok = d_phi <= 1e-13 && d_g <= 1e-13 && d_ns <= 1e-12;
    return {"", ok, "|moment-2| = " + num(d_phi) + " (tol 1e-13), gradient-sum rel = " +
                        num(d_g) + " (tol 1e-13), n=1 reduction rel = " + num(d_ns) +
                        " (tol 1e-12)"};
}

// --- invariance ----------------------------------------------------------------

CheckResult check_scale_translation_invariance() {
    struct Case {
        std::string name;
        Density rho;
        double lambda;
        int dim;
        std::vector<double> scales;
    };
    const std::vector<Case> cases = {
        {"gauss-1d", densities::gaussian_line(1.0, 0.0), 1.5, 1, {0.5, 2.0, 3.0, -2.0}},
        {"B1.5-1d", densities::make_generalized_gaussian(1.5, 1).density, 2.0, 1,
         {0.5, 2.0, 3.0, -2.0}},
        {"gauss-3d", densities::gaussian_radial(3, 1.0), 1.2, 3, {0.5, 2.0, 3.0}},
        {"hyd-2p", hydrogenic::density({2, 1, 1}), 1.5, 3, {0.5, 2.0, 3.0}},
    };
    const double b1[] = {0.7};
    const double b3[] = {0.3, -0.2, 0.5};

    int transforms = 0;
    double worst_c = 0.0, worst_exp = 0.0;
    std::string worst_id;
    for (const auto& c : cases) {
        LambdaParam lam(c.lambda, c.dim);
        auto base = complexity::cfr_complexity(c.rho, lam, QuadratureSpec{});
        std::span<const double> shift =
            c.dim == 1 ? std::span<const double>(b1) : std::span<const double>(b3);
        for (double a : c.scales) {
            auto scaled = densities::scale_translate(c.rho, a, shift);
            auto rep = complexity::cfr_complexity(scaled, lam, QuadratureSpec{});
            ++transforms;
            double amu = std::pow(std::fabs(a), lam.mu());
            double dc = std::fabs(rep.cfr / base.cfr - 1.0);
            double df = std::fabs(rep.fisher_lambda / (base.fisher_lambda * amu) - 1.0);
            double dn = std::fabs(rep.renyi_power * amu / base.renyi_power - 1.0);
            if (dc >= worst_c) {
                worst_c = dc;
                worst_id = c.name + ",a=" + num(a);
            }
            worst_exp = std::max({worst_exp, df, dn});
        }
    }
    bool ok = worst_c <= 1e-7 && worst_exp <= 1e-7;
    return {"", ok, std::to_string(transforms) + " transforms, max |C ratio - 1| = " +
                        num(worst_c) + " at " + worst_id +
                        ", max component-exponent residual = " + num(worst_exp) +
                        " (tol 1e-7)"};
}

CheckResult check_nuclear_charge_invariance() {
    const hydrogenic::QuantumNumbers states[] = {{1, 0, 0}, {2, 1, 1}, {3, 1, 0}};
    LambdaParam lam(1.5, 3);
    double worst = 0.0;
    std::string worst_id;
    for (const auto& s : states) {
        double ref = 0.0;
        for (double Z : {1.0, 2.0, 5.0}) {
            hydrogenic::QuantumNumbers qn(s.n, s.l, s.m, Z);
            auto rep = hydrogenic::cfr_numeric(qn, lam, QuadratureSpec{});
            if (Z == 1.0) {
                ref = rep.cfr;
                continue;
            }
            double dev = std::fabs(rep.cfr / ref - 1.0);
            if (dev >= worst) {
                worst = dev;
                worst_id = "(" + std::to_string(s.n) + "," + std::to_string(s.l) + "," +
                           std::to_string(s.m) + "),Z=" + num(Z);
            }
        }
    }
    bool ok = worst <= 1e-7;
    return {"", ok, "3 states x Z in {1,2,5}, max |C(Z)/C(1) - 1| = " + num(worst) +
                        " at " + worst_id + " (tol 1e-7)"};
}

// --- replication -----------------------------------------------------------------

CheckResult check_replication_law() {
    auto arch = make_arch();
    const double lv = 1.5;
    LambdaParam lam(lv, 1);
    auto base = complexity::cfr_complexity(arch, lam, QuadratureSpec{});
    double worst_c = 0.0, worst_comp = 0.0;
    for (int n : {2, 3}) {
        auto rep = complexity::cfr_complexity(densities::replicate_1d(arch, n), lam,
                                              QuadratureSpec{});
        double dn = n;
        double dc = std::fabs(rep.cfr / (base.cfr * dn * dn) - 1.0);
        double df = std::fabs(
            rep.fisher_lambda / (base.fisher_lambda * std::pow(dn, 0.5 * (3.0 - lv))) - 1.0);
        double dp = std::fabs(
            rep.renyi_power / (base.renyi_power * std::pow(dn, 0.5 * (lv + 1.0))) - 1.0);
        worst_c = std::max(worst_c, dc);
        worst_comp = std::max({worst_comp, df, dp});
    }
    bool ok = worst_c <= 1e-4 && worst_comp <= 1e-5;
    return {"", ok, "n in {2,3} at lambda = 1.5: max |C ratio / n^2 - 1| = " + num(worst_c) +
                        " (tol 1e-4), max component residual = " + num(worst_comp) +
                        " (tol 1e-5)"};
}

// --- rearrangement ---------------------------------------------------------------

CheckResult check_rearrangement_monotone() {
    auto arch = make_arch();
    struct Entry { std::string name; Density rho; };
    const std::vector<Entry> entries = {
        {"arch-x2", densities::replicate_1d(arch, 2)},
        {"arch-x3", densities::replicate_1d(arch, 3)},
        {"perturbed-arch", densities::near_continuity_pair(0.3).second},
    };
    const QuadratureSpec spec;
    bool mono_ok = true;
    double worst_dr_fine = 0.0, worst_ratio = 0.0, min_drop = 1e300;
    std::string worst_id;
    for (const auto& e : entries) {
        for (double lv : {1.5, 2.0}) {
            LambdaParam lam(lv, 1);
            double r0 = functionals::renyi_entropy(e.rho, lv, spec).value;
            double c0 = complexity::cfr_complexity(e.rho, lam, spec).cfr;
            double i0 = functionals::biparametric_fisher(e.rho, 2.0, lv, spec).value;
            double dr[2];
            for (int k : {0, 1}) {
                int grid = k == 0 ? 2001 : 4001;
                auto star = densities::rearrange_decreasing_1d(e.rho, grid).as_density();
                double rs = functionals::renyi_entropy(star, lv, spec).value;
                double cs = complexity::cfr_complexity(star, lam, spec).cfr;
                double is = functionals::biparametric_fisher(star, 2.0, lv, spec).value;
                mono_ok = mono_ok && cs < c0 && is <= i0;
                min_drop = std::min(min_drop, c0 - cs);
                dr[k] = std::fabs(rs - r0);
            }
            double ratio = dr[0] > 0.0 ? dr[1] / dr[0] : 0.0;
            if (dr[1] >= worst_dr_fine) {
                worst_dr_fine = dr[1];
                worst_id = e.name + "@lambda=" + num(lv);
            }
            worst_ratio = std::max(worst_ratio, ratio);
        }
    }
    bool ok = mono_ok && worst_dr_fine <= 5e-7 && worst_ratio <= 0.8;
    return {"", ok, std::string("6 cases at grids 2001/4001: monotone drop ") +
                        (mono_ok ? "holds" : "VIOLATED") + " (min C - C* = " + num(min_drop) +
                        "), max entropy drift at fine grid = " + num(worst_dr_fine) +
                        " at " + worst_id + " (tol 5e-7), worst refinement ratio = " +
                        num(worst_ratio) + " (tol 0.8)"};
}

// --- continuity -------------------------------------------------------------------

CheckResult check_near_continuity_blowup() {
    LambdaParam lam(1.5, 1);
    const QuadratureSpec spec;
    auto base = densities::near_continuity_pair(0.2).first;
    double c_base = complexity::cfr_complexity(base, lam, spec).cfr;

    double prev = c_base;
    bool increasing = true, sup_ok = true;
    std::string cs = "C(base) = " + num(c_base);
    for (double delta : {0.2, 0.1, 0.05}) {
        auto pair = densities::near_continuity_pair(delta);
        double hi = std::pow(delta, 5) * M_PI;
        double sup = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            double x = -M_PI + (hi + M_PI) * i / 2000.0;
            double a = pair.first.evaluate(std::span<const double>(&x, 1));
            double b = pair.second.evaluate(std::span<const double>(&x, 1));
            sup = std::max(sup, std::fabs(a - b));
        }
        sup_ok = sup_ok && sup <= delta;
        double c = complexity::cfr_complexity(pair.second, lam, spec).cfr;
        increasing = increasing && c > prev;
        prev = c;
        cs += " -> " + num(c) + " (sup gap " + num(sup) + " <= " + num(delta) + ")";
    }
    bool ok = increasing && sup_ok;
    return {"", ok, cs + (increasing ? "; strictly increasing" : "; NOT increasing")};
}

CheckResult check_shannon_limit() {
    double d_near = complexity::normalization_constant(LambdaParam(1.001, 3));
    double d_limit = 6.0 * M_PI * std::exp(1.0);
    double gap = std::fabs(d_near / d_limit - 1.0);

    double dev = 0.0;
    {
        auto rep = complexity::cfr_complexity(densities::gaussian_line(1.0, 0.0),
                                              LambdaParam(1.0, 1), QuadratureSpec{});
        dev = std::max(dev, std::fabs(rep.cfr - 1.0));
    }
    {
        auto rep = complexity::cfr_complexity(densities::gaussian_radial(3, 1.0),
                                              LambdaParam(1.0, 3), QuadratureSpec{});
        dev = std::max(dev, std::fabs(rep.cfr - 1.0));
    }
    bool ok = gap <= 0.01 && dev <= 1e-8;
    return {"", ok, "|D(1.001,3)/(6 pi e) - 1| = " + num(gap) +
                        " (tol 0.01); max |C(gaussian)@lambda=1 - 1| = " + num(dev) +
                        " (tol 1e-8, d = 1 and 3)"};
}

struct SuiteDef {
    const char* name;
    std::vector<std::pair<const char*, CheckResult (*)()>> checks;
};

const std::vector<SuiteDef>& suite_defs() {
    static const std::vector<SuiteDef> defs = {
        {"bounds",
         {{"minimizers-sharp", check_minimizers_sharp},
          {"lower-bound-battery", check_lower_bound_battery},
          {"shannon-limit", check_shannon_limit}}},
        {"hydrogenic",
         {{"dual-path-agreement", check_dual_path_agreement},
          {"closed-form-identities", check_closed_form_identities},
          {"nuclear-charge-invariance", check_nuclear_charge_invariance}}},
        {"scaling",
         {{"scale-translation-invariance", check_scale_translation_invariance}}},
        {"replication", {{"replication-law", check_replication_law}}},
        {"rearrangement", {{"rearrangement-monotone", check_rearrangement_monotone}}},
        {"near-continuity", {{"near-continuity-blowup", check_near_continuity_blowup}}},
    };
    return defs;
}

} // namespace

bool SuiteResult::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& d : suite_defs())
        names.push_back(d.name);
    return names;
}

SuiteResult run_suite(const std::string& name) {
    for (const auto& d : suite_defs()) {
        if (name != d.name)
            continue;
        SuiteResult result;
        result.name = d.name;
        for (const auto& [check_name, fn] : d.checks)
            result.checks.push_back(run_check(check_name, fn));
        return result;
    }
    throw std::domain_error("unknown verification suite: " + name);
}

std::vector<SuiteResult> run_all() {
    std::vector<SuiteResult> out;
    for (const auto& d : suite_defs())
        out.push_back(run_suite(d.name));
    return out;
}

} // namespace cfr::verify
