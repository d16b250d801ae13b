#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cfr/density.hpp"
#include "cfr/functionals.hpp"

using namespace cfr;
using densities::Density;

namespace {
constexpr double kPi = 3.14159265358979323846;

double mass(const Density& rho) {
    return functionals::normalization(rho).value;
}
}  // namespace

TEST_CASE("generalized Gaussian constants and support") {
    SUBCASE("compact family, lambda=2 in three dimensions") {
        auto g = densities::make_generalized_gaussian(2.0, 3);
        CHECK(g.a_const ==
              doctest::Approx(1.675516081914556394).epsilon(1e-13));
        CHECK(g.c_const ==
              doctest::Approx(0.8134681616584949930).epsilon(1e-13));
        CHECK(mass(g.density) == doctest::Approx(1.0).epsilon(1e-10));

        // Support radius is sqrt(C); outside it the density vanishes.
        double edge = std::sqrt(g.c_const);
        std::array<double, 3> inside{0.5 * edge, 0.0, 0.0};
        std::array<double, 3> outside{1.5 * edge, 0.0, 0.0};
        CHECK(g.density.evaluate(inside) > 0.0);
        CHECK(g.density.evaluate(outside) == 0.0);
        // Kernel (C - |x|^2)^{1/(lambda-1)} at the origin for lambda = 2 is C
        // itself; the constant C is chosen so the total mass is 1 without a
        // separate prefactor.
        std::array<double, 3> origin{0.0, 0.0, 0.0};
        CHECK(g.density.evaluate(origin) ==
              doctest::Approx(g.c_const).epsilon(1e-12));
    }

    SUBCASE("heavy-tailed family, lambda=0.8 on the line") {
        auto g = densities::make_generalized_gaussian(0.8, 1);
        CHECK(g.a_const == doctest::Approx(0.859029241215959).epsilon(1e-12));
        CHECK(mass(g.density) == doctest::Approx(1.0).epsilon(1e-9));
        // (C + x^2)^{1/(lambda-1)} with 1/(lambda-1) = -5: power-law tail.
        std::array<double, 1> far{40.0};
        double expected = std::pow(g.c_const + 1600.0, -5.0);
        CHECK(g.density.evaluate(far) == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("inadmissible parameters are rejected") {
        CHECK_THROWS_AS(densities::make_generalized_gaussian(0.5, 3),
                        std::domain_error);
        CHECK_THROWS_AS(densities::make_generalized_gaussian(1.0, 1),
                        std::domain_error);
        CHECK_THROWS_AS(densities::make_generalized_gaussian(2.0, 4),
                        std::domain_error);
    }
}

TEST_CASE("reference Gaussians") {
    auto line = densities::gaussian_line(1.0);
    CHECK(mass(line) == doctest::Approx(1.0).epsilon(1e-11));
    std::array<double, 1> zero{0.0};
    CHECK(line.evaluate(zero) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-13));

    auto wide = densities::gaussian_line(2.0, -1.0);
    std::array<double, 1> peak{-1.0};
    CHECK(wide.evaluate(peak) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(2.0 * kPi))).epsilon(1e-13));

    auto ball = densities::gaussian_radial(3, 1.0);
    CHECK(mass(ball) == doctest::Approx(1.0).epsilon(1e-10));
    std::array<double, 3> origin{0.0, 0.0, 0.0};
    CHECK(ball.evaluate(origin) ==
          doctest::Approx(std::pow(2.0 * kPi, -1.5)).epsilon(1e-13));
}

TEST_CASE("scale_translate is mass-preserving with the covariant pointwise law") {
    auto base = densities::gaussian_line(1.0);
    std::vector<double> shift{0.7};
    auto moved = densities::scale_translate(base, 2.0, shift);
    CHECK(mass(moved) == doctest::Approx(1.0).epsilon(1e-10));
    for (double x : {0.0, 0.7, 1.3}) {
        CAPTURE(x);
        std::array<double, 1> px{x};
        std::array<double, 1> pref{2.0 * (x - 0.7)};
        CHECK(moved.evaluate(px) ==
              doctest::Approx(2.0 * base.evaluate(pref)).epsilon(1e-13));
    }

    auto ball = densities::gaussian_radial(3, 1.0);
    std::vector<double> shift3{0.3, -0.2, 0.5};
    auto moved3 = densities::scale_translate(ball, 0.5, shift3);
    CHECK(mass(moved3) == doctest::Approx(1.0).epsilon(1e-9));
    std::array<double, 3> probe{1.0, 0.0, 0.0};
    std::array<double, 3> pulled{0.5 * (1.0 - 0.3), 0.5 * 0.2, -0.5 * 0.5};
    CHECK(moved3.evaluate(probe) ==
          doctest::Approx(0.125 * ball.evaluate(pulled)).epsilon(1e-12));
}

TEST_CASE("trig arch pair: masses, supports, sup-distance") {
    auto [arch, wobbled] = densities::near_continuity_pair(0.3);
    CHECK(mass(arch) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(mass(wobbled) == doctest::Approx(1.0).epsilon(1e-11));

    // Base arch (2/pi) sin^2 on [-pi, 0].
    std::array<double, 1> mid{-kPi / 2.0};
    CHECK(arch.evaluate(mid) == doctest::Approx(2.0 / kPi).epsilon(1e-13));
    std::array<double, 1> right{0.5};
    CHECK(arch.evaluate(right) == 0.0);

    // The companion carries a tiny second arch just right of zero.
    double d5 = std::pow(0.3, 5);
    std::array<double, 1> bump{0.5 * d5 * kPi};
    CHECK(wobbled.evaluate(bump) > 0.0);

    // Sup distance stays below delta.
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        double x = -kPi + i * (kPi + d5 * kPi) / 2000.0;
        std::array<double, 1> px{x};
        sup = std::max(sup,
                       std::fabs(arch.evaluate(px) - wobbled.evaluate(px)));
    }
    CHECK(sup <= 0.3);

    CHECK_THROWS_AS(densities::near_continuity_pair(0.0), std::domain_error);
    CHECK_THROWS_AS(densities::near_continuity_pair(1.0), std::domain_error);
}

TEST_CASE("replicate_1d lays out disjoint compressed copies") {
    auto arch = densities::near_continuity_pair(0.5).first;
    auto twin = densities::replicate_1d(arch, 2);
    CHECK(mass(twin) == doctest::Approx(1.0).epsilon(1e-10));

    // Copies live on [lo + 2 m w_c, lo + (2 m + 1) w_c] with w_c = w/sqrt(2);
    // the gap between them carries no mass.
    double wc = kPi / std::sqrt(2.0);
    std::array<double, 1> inside_first{-kPi + 0.5 * wc};
    std::array<double, 1> in_gap{-kPi + 1.5 * wc};
    std::array<double, 1> inside_second{-kPi + 2.5 * wc};
    CHECK(twin.evaluate(inside_first) > 0.0);
    CHECK(twin.evaluate(in_gap) == 0.0);
    CHECK(twin.evaluate(inside_second) > 0.0);

    // Pointwise law: each copy is n^{-1/2} rho(sqrt(n)(x - b_m)).
    std::array<double, 1> pulled{-kPi + std::sqrt(2.0) * 0.5 * wc};
    CHECK(twin.evaluate(inside_first) ==
          doctest::Approx(arch.evaluate(pulled) / std::sqrt(2.0))
              .epsilon(1e-12));

    CHECK_THROWS_AS(densities::replicate_1d(densities::gaussian_line(1.0), 2),
                    std::domain_error);
    CHECK_THROWS_AS(densities::replicate_1d(arch, 0), std::domain_error);
}

TEST_CASE("monotone grid interpolant") {
    densities::GridDensity1D grid({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 1.0, 0.0});
    CHECK(grid.value(0.0) == doctest::Approx(0.0));
    CHECK(grid.value(1.0) == doctest::Approx(1.0));
    CHECK(grid.value(2.5) > 0.0);
    CHECK(grid.value(-0.5) == 0.0);  // outside the nodes
    CHECK(grid.value(3.5) == 0.0);
    // Monotone limiter: no overshoot above the data range.
    for (int i = 0; i <= 300; ++i) {
        double x = 3.0 * i / 300.0;
        CHECK(grid.value(x) <= 1.0 + 1e-12);
        CHECK(grid.value(x) >= -1e-12);
    }
    CHECK_THROWS_AS(densities::GridDensity1D({0.0, 0.0}, {1.0, 1.0}),
                    std::domain_error);
    CHECK_THROWS_AS(densities::GridDensity1D({0.0}, {1.0}), std::domain_error);
}

TEST_CASE("symmetric decreasing rearrangement") {
    auto pair = densities::near_continuity_pair(0.3);
    const Density& bumpy = pair.second;  // asymmetric two-arch density
    auto star = densities::rearrange_decreasing_1d(bumpy, 2001);
    auto rho_star = star.as_density();

    SUBCASE("unit mass, symmetry, monotone decay") {
        CHECK(mass(rho_star) == doctest::Approx(1.0).epsilon(1e-10));
        for (double x : {0.2, 0.8, 1.4}) {
            CAPTURE(x);
            CHECK(star.value(x) == doctest::Approx(star.value(-x)).epsilon(1e-12));
        }
        double prev = star.value(0.0);
        for (int i = 1; i <= 40; ++i) {
            double x = i * 0.04;
            double cur = star.value(x);
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }

    SUBCASE("equimeasurability: power integrals survive rearrangement") {
        for (double p : {1.5, 2.0, 3.0}) {
            CAPTURE(p);
            double before = functionals::renyi_entropy(bumpy, p).value;
            double after = functionals::renyi_entropy(rho_star, p).value;
            CHECK(after == doctest::Approx(before).epsilon(5e-6));
        }
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(
            densities::rearrange_decreasing_1d(densities::gaussian_line(1.0),
                                               2001),
            std::domain_error);
        CHECK_THROWS_AS(densities::rearrange_decreasing_1d(bumpy, 32),
                        std::domain_error);
        CHECK_THROWS_AS(densities::rearrange_decreasing_1d(
                            densities::gaussian_radial(3, 1.0), 2001),
                        std::domain_error);
    }
}

TEST_CASE("density structural accessors") {
    auto ball = densities::gaussian_radial(3, 1.0);
    CHECK(ball.kind() == Density::Kind::radial);
    CHECK(ball.dim() == 3);
    CHECK_THROWS_AS(ball.polar(), std::domain_error);

    auto line = densities::gaussian_line(1.0);
    CHECK(line.kind() == Density::Kind::line);
    CHECK(line.dim() == 1);
    std::array<double, 3> wrong{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(line.evaluate(wrong), std::domain_error);

    // Gradient of the line Gaussian: rho'(x) = -x rho(x) at sigma = 1.
    std::array<double, 1> probe{0.8};
    auto grad = line.gradient(probe);
    REQUIRE(grad.size() == 1);
    CHECK(grad[0] ==
          doctest::Approx(-0.8 * line.evaluate(probe)).epsilon(1e-12));
}
