#include <cmath>

#include "doctest.h"

#include "cfr/density.hpp"
#include "cfr/errors.hpp"
#include "cfr/functionals.hpp"
#include "cfr/hydrogenic.hpp"

using namespace cfr;
using densities::Density;
using densities::Profile1D;
using functionals::LambdaParam;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Uniform density 1/w on [0, w]: every Renyi order gives entropy ln w.
Density uniform_line(double w) {
    Profile1D p;
    p.value = [w](double) { return 1.0 / w; };
    p.deriv = [](double) { return 0.0; };
    p.domain = {0.0, w};
    return Density::line(std::move(p));
}

Density arch() { return densities::near_continuity_pair(0.5).first; }

}  // namespace

TEST_CASE("lambda parameter admissibility") {
    CHECK(LambdaParam::lower_bound(1) == doctest::Approx(1.0 / 3.0));
    CHECK(LambdaParam::lower_bound(3) == doctest::Approx(2.0 / 3.0));
    CHECK_NOTHROW(LambdaParam(0.34, 1));
    CHECK_NOTHROW(LambdaParam(0.7, 3));
    CHECK_THROWS_AS(LambdaParam(1.0 / 3.0, 1), std::domain_error);
    CHECK_THROWS_AS(LambdaParam(0.5, 3), std::domain_error);
    CHECK_THROWS_AS(LambdaParam(2.0, 0), std::domain_error);
    CHECK(LambdaParam(2.0, 3).mu() == doctest::Approx(5.0));
    CHECK(LambdaParam(1.0, 1).shannon_limit());
    CHECK_FALSE(LambdaParam(1.5, 1).shannon_limit());
}

TEST_CASE("normalization of reference densities") {
    CHECK(functionals::normalization(densities::gaussian_line(0.7)).value ==
          doctest::Approx(1.0).epsilon(1e-11));
    CHECK(functionals::normalization(uniform_line(2.0)).value ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Renyi and Shannon entropies on closed-form densities") {
    SUBCASE("standard Gaussian") {
        auto g = densities::gaussian_line(1.0);
        // R_2 = ln(2 sqrt(pi))
        CHECK(functionals::renyi_entropy(g, 2.0).value ==
              doctest::Approx(1.2655121234846453965).epsilon(1e-11));
        // Shannon = ln sqrt(2 pi e)
        double s = 0.5 * std::log(2.0 * kPi * std::exp(1.0));
        CHECK(functionals::shannon_entropy(g).value ==
              doctest::Approx(s).epsilon(1e-11));
        CHECK(functionals::renyi_entropy(g, 1.0).value ==
              doctest::Approx(s).epsilon(1e-11));
        // int rho^p = (2 pi)^{(1-p)/2} p^{-1/2} gives
        // R_p = ln(2 pi)/2 + ln(p) / (2(p-1)) for N(0, 1).
        for (double p : {0.5, 3.0}) {
            CAPTURE(p);
            double expect = 0.5 * std::log(2.0 * kPi) +
                            0.5 * std::log(p) / (p - 1.0);
            CHECK(functionals::renyi_entropy(g, p).value ==
                  doctest::Approx(expect).epsilon(1e-10));
        }
    }

    SUBCASE("uniform density has order-independent entropy ln w") {
        auto u = uniform_line(2.0);
        for (double p : {0.5, 1.0, 2.0, 3.0}) {
            CAPTURE(p);
            CHECK(functionals::renyi_entropy(u, p).value ==
                  doctest::Approx(std::log(2.0)).epsilon(1e-12));
        }
    }

    SUBCASE("trig arch Shannon entropy ln(2 pi) - 1") {
        CHECK(functionals::shannon_entropy(arch()).value ==
              doctest::Approx(0.8378770664093454836).epsilon(1e-10));
    }

    SUBCASE("order must be positive") {
        CHECK_THROWS_AS(functionals::renyi_entropy(arch(), 0.0),
                        std::domain_error);
        CHECK_THROWS_AS(functionals::renyi_entropy(arch(), -1.0),
                        std::domain_error);
    }
}

TEST_CASE("Fisher information") {
    SUBCASE("Gaussian 1/sigma^2 on the line, d/sigma^2 radially") {
        for (double sigma : {0.5, 1.0, 2.0}) {
            CAPTURE(sigma);
            CHECK(functionals::fisher_standard(densities::gaussian_line(sigma))
                      .value ==
                  doctest::Approx(1.0 / (sigma * sigma)).epsilon(1e-9));
        }
        CHECK(functionals::fisher_standard(densities::gaussian_radial(3, 1.0))
                  .value == doctest::Approx(3.0).epsilon(1e-9));
    }

    SUBCASE("deformed functional reduces to the standard one at lambda 1") {
        for (const Density& rho :
             {densities::gaussian_line(1.3), arch()}) {
            double f1 =
                functionals::fisher_lambda(rho, LambdaParam(1.0, 1)).value;
            double f = functionals::fisher_standard(rho).value;
            CHECK(f1 == doctest::Approx(f).epsilon(1e-10));
        }
    }

    SUBCASE("closed form of the deformed functional on the Gaussian") {
        // For N(0,1) and lambda = 2:
        // int rho^{2L-3} rho'^2 = int x^2 rho^3 = (2 pi)^{-1} 3^{-3/2},
        // int rho^2 = (2 pi)^{-1} sqrt(pi), so F_2 = 3^{-3/2} / sqrt(pi).
        auto g = densities::gaussian_line(1.0);
        CHECK(functionals::fisher_lambda(g, LambdaParam(2.0, 1)).value ==
              doctest::Approx(1.0 / std::sqrt(27.0 * kPi)).epsilon(1e-10));
    }
}

TEST_CASE("Renyi entropy power") {
    SUBCASE("Shannon limit: N_1 = exp(2 S / d)") {
        auto g = densities::gaussian_line(1.0);
        CHECK(functionals::renyi_power(g, LambdaParam(1.0, 1)).value ==
              doctest::Approx(2.0 * kPi * std::exp(1.0)).epsilon(1e-10));

        auto ball = densities::gaussian_radial(3, 1.0);
        CHECK(functionals::renyi_power(ball, LambdaParam(1.0, 3)).value ==
              doctest::Approx(2.0 * kPi * std::exp(1.0)).epsilon(1e-9));
    }

    SUBCASE("power alpha of the integral matches (mu/d)/(1-lambda)") {
        // For the uniform on [0, w]: int rho^L = w^{1-L}, so
        // N_lambda = w^{(1-L) alpha} with alpha = (mu/d)/(1-lambda) and the
        // closed exponent collapses to w^mu with mu = 2 + d(lambda-1).
        LambdaParam lam(1.5, 1);
        auto u = uniform_line(2.0);
        CHECK(functionals::renyi_power(u, lam).value ==
              doctest::Approx(std::pow(2.0, lam.mu())).epsilon(1e-11));
    }
}

TEST_CASE("biparametric gradient functional") {
    SUBCASE("beta=2, q=lambda recovers F_lambda times the power integral") {
        auto g = densities::gaussian_line(1.0);
        for (double q : {1.5, 2.0}) {
            CAPTURE(q);
            LambdaParam lam(q, 1);
            double f = functionals::fisher_lambda(g, lam).value;
            double power_integral =
                std::exp((1.0 - q) * functionals::renyi_entropy(g, q).value);
            double i2 = functionals::biparametric_fisher(g, 2.0, q).value;
            CHECK(i2 == doctest::Approx(f * power_integral).epsilon(1e-9));
        }
    }

    SUBCASE("closed form on the Gaussian: I_{2,q} = (2pi)^{1-q} (2q-1)^{-3/2}") {
        auto g = densities::gaussian_line(1.0);
        for (double q : {1.0, 1.5, 2.0}) {
            CAPTURE(q);
            double expect =
                std::pow(2.0 * kPi, 1.0 - q) * std::pow(2.0 * q - 1.0, -1.5);
            CHECK(functionals::biparametric_fisher(g, 2.0, q).value ==
                  doctest::Approx(expect).epsilon(1e-9));
        }
    }

    SUBCASE("beta=1 total-variation flavor on the arch") {
        // int |rho'| = 2 max rho = 4/pi for the single arch.
        CHECK(functionals::biparametric_fisher(arch(), 1.0, 1.0).value ==
              doctest::Approx(4.0 / kPi).epsilon(1e-9));
    }
}

TEST_CASE("variance") {
    CHECK(functionals::variance(densities::gaussian_line(1.0)).value ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(functionals::variance(densities::gaussian_line(0.5)).value ==
          doctest::Approx(0.25).epsilon(1e-10));
    CHECK(functionals::variance(densities::gaussian_radial(3, 1.0)).value ==
          doctest::Approx(3.0).epsilon(1e-9));
    // Translation leaves the central moment alone.
    std::vector<double> shift{2.5};
    auto moved =
        densities::scale_translate(densities::gaussian_line(1.0), 1.0, shift);
    CHECK(functionals::variance(moved).value ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("separable pieces assemble to the direct functional value") {
    auto rho = hydrogenic::density(hydrogenic::QuantumNumbers(2, 1, 1));
    const double lambda = 1.5;
    auto pieces = functionals::separable_fisher_pieces(rho, lambda);
    double numerator = pieces.radial_gradient * pieces.angular_high_power +
                       pieces.radial_high_power * pieces.angular_gradient;
    double denominator = pieces.radial_power * pieces.angular_power;

    LambdaParam lam(lambda, 3);
    CHECK(numerator / denominator ==
          doctest::Approx(functionals::fisher_lambda(rho, lam).value)
              .epsilon(1e-9));

    // The power integral itself is the denominator.
    double power_integral =
        std::exp((1.0 - lambda) * functionals::renyi_entropy(rho, lambda).value);
    CHECK(denominator == doctest::Approx(power_integral).epsilon(1e-9));
}
