#include <cmath>

#include "doctest.h"

#include "cfr/errors.hpp"
#include "cfr/quadrature.hpp"

using namespace cfr;
using quadrature::integrate_interval;
using quadrature::integrate_semi_infinite;
using quadrature::QuadratureSpec;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("finite-interval basics") {
    auto sine = integrate_interval([](double t) { return std::sin(t); }, 0.0, kPi);
    CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sine.err_estimate < 1e-8);

    auto poly = integrate_interval([](double t) { return 3.0 * t * t; }, -1.0, 2.0);
    CHECK(poly.value == doctest::Approx(9.0).epsilon(1e-13));

    auto osc = integrate_interval([](double t) { return std::cos(10.0 * t); },
                                  0.0, 1.0);
    CHECK(osc.value == doctest::Approx(std::sin(10.0) / 10.0).epsilon(1e-11));
}

TEST_CASE("integrable endpoint singularity x^{-1/2} on (0,1]") {
    auto r = integrate_interval([](double t) { return 1.0 / std::sqrt(t); },
                                0.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("semi-infinite integrals") {
    auto expo = integrate_semi_infinite([](double x) { return std::exp(-x); });
    CHECK(expo.value == doctest::Approx(1.0).epsilon(1e-12));

    auto moment = integrate_semi_infinite(
        [](double x) { return x * x * std::exp(-2.0 * x); });
    CHECK(moment.value == doctest::Approx(0.25).epsilon(1e-12));

    auto halfgauss = integrate_semi_infinite(
        [](double x) { return std::exp(-0.5 * x * x); });
    CHECK(halfgauss.value == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-12));
}

TEST_CASE("breakpoints pre-split the domain without changing values") {
    auto kink = [](double t) { return std::fabs(t - 1.0 / 3.0); };
    auto plain = integrate_interval(kink, 0.0, 1.0);

    QuadratureSpec hinted;
    hinted.breakpoints = {1.0 / 3.0};
    auto split = integrate_interval(kink, 0.0, 1.0, hinted);

    double exact = (1.0 / 9.0 + 4.0 / 9.0) / 2.0;
    CHECK(plain.value == doctest::Approx(exact).epsilon(1e-12));
    CHECK(split.value == doctest::Approx(exact).epsilon(1e-14));
    CHECK(split.value == doctest::Approx(plain.value).epsilon(1e-12));

    // Breakpoints outside (a, b) are ignored.
    QuadratureSpec outside;
    outside.breakpoints = {-5.0, 2.0, 7.0};
    auto same = integrate_interval([](double t) { return t * t; }, 0.0, 1.0,
                                   outside);
    CHECK(same.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("error estimates cover the true error") {
    for (double tol : {1e-6, 1e-10}) {
        CAPTURE(tol);
        QuadratureSpec spec;
        spec.rel_tol = tol;
        auto r = integrate_interval([](double t) { return std::exp(t); }, 0.0,
                                    1.0, spec);
        double truth = std::exp(1.0) - 1.0;
        CHECK(std::fabs(r.value - truth) <= std::max(r.err_estimate, 1e-14));
        CHECK(std::fabs(r.value - truth) / truth <= tol);
    }
}

TEST_CASE("divergent integrand raises convergence_error with its best guess") {
    QuadratureSpec spec;
    spec.max_subdivisions = 200;
    CHECK_THROWS_AS(
        integrate_interval([](double t) { return 1.0 / t; }, 0.0, 1.0, spec),
        convergence_error);
    try {
        integrate_interval([](double t) { return 1.0 / t; }, 0.0, 1.0, spec);
    } catch (const convergence_error& e) {
        CHECK(e.best_estimate > 10.0);   // grows with every refinement
        CHECK(e.err_estimate > 0.0);
    }
}

TEST_CASE("results are deterministic") {
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    auto a = integrate_semi_infinite(f);
    auto b = integrate_semi_infinite(f);
    CHECK(a.value == b.value);  // bitwise
    CHECK(a.err_estimate == b.err_estimate);
}

TEST_CASE("interval endpoints are validated") {
    // Degenerate interval carries no mass; reversed endpoints are an error.
    auto zero = integrate_interval([](double) { return 1.0; }, 1.0, 1.0);
    CHECK(zero.value == 0.0);
    CHECK(zero.err_estimate == 0.0);
    CHECK_THROWS_AS(
        integrate_interval([](double) { return 1.0; }, 2.0, 1.0),
        std::domain_error);
}
