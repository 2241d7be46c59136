#include <doctest.h>

#include <cmath>
#include <random>

#include "delta_spectra/kernels.hpp"

using namespace delta_spectra;

TEST_CASE("t0_hat closed-form values") {
    CHECK(t0_hat(0.0, -0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t0_hat(0.0, -0.125, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(t0_hat(1.0, -0.5, 0.5) == doctest::Approx(1.0 / std::sqrt(1.75)).epsilon(1e-14));
    CHECK_THROWS_AS(t0_hat(0.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("t1_hat values and symmetry") {
    CHECK(t1_hat(0.0, 0.0, -0.5, 0.0) == doctest::Approx(M_1_PI).epsilon(1e-14));
    CHECK(t1_hat(1.0, -1.0, -0.5, 0.0) == doctest::Approx(M_1_PI / 3.0).epsilon(1e-14));

    std::mt19937 gen(123);
    std::uniform_real_distribution<double> mom(-5.0, 5.0);
    std::uniform_real_distribution<double> sig(0.0, 0.95);
    for (int i = 0; i < 200; ++i) {
        const double s = mom(gen), t = mom(gen), sg = sig(gen);
        CHECK(t1_hat(s, t, -0.7, sg) == t1_hat(t, s, -0.7, sg));
    }
}

TEST_CASE("t2_hat values; asymmetric in (s,t)") {
    CHECK(t2_hat(0.0, 0.0, -0.5, 0.0) == doctest::Approx(M_1_PI).epsilon(1e-14));
    CHECK(t2_hat(2.0, 1.0, -0.5, 0.0) == doctest::Approx(M_1_PI / 3.0).epsilon(1e-14));
    CHECK(t2_hat(1.0, 2.0, -0.5, 0.0) == doctest::Approx(M_1_PI / 6.0).epsilon(1e-14));
    CHECK(t2_hat(1.0, 2.0, -0.5, 0.0) != t2_hat(2.0, 1.0, -0.5, 0.0));
}

TEST_CASE("t3_hat marks the exciton threshold") {
    CHECK(t3_hat(0.0, -0.25, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t3_hat(0.0, -1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t3_hat(0.0, -0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kernels are positive, finite, increasing in E") {
    std::mt19937 gen(321);
    std::uniform_real_distribution<double> mom(-8.0, 8.0);
    std::uniform_real_distribution<double> en(-20.0, -0.05);
    std::uniform_real_distribution<double> sig(0.0, 0.95);
    for (int i = 0; i < 400; ++i) {
        const double s = mom(gen), t = mom(gen), e = en(gen), sg = sig(gen);
        const double h = 1e-6 * std::abs(e);
        for (double v : {t0_hat(s, e, sg), t1_hat(s, t, e, sg), t2_hat(s, t, e, sg),
                         t3_hat(s, e, sg)}) {
            CHECK(std::isfinite(v));
            CHECK(v > 0.0);
        }
        CHECK(t0_hat(s, e + h, sg) > t0_hat(s, e, sg));
        CHECK(t1_hat(s, t, e + h, sg) > t1_hat(s, t, e, sg));
        CHECK(t2_hat(s, t, e + h, sg) > t2_hat(s, t, e, sg));
        CHECK(t3_hat(s, e + h, sg) > t3_hat(s, e, sg));
    }
}

TEST_CASE("sigma = 0 reduction of t1") {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> mom(-6.0, 6.0);
    std::uniform_real_distribution<double> en(-10.0, -0.1);
    for (int i = 0; i < 200; ++i) {
        const double s = mom(gen), t = mom(gen), e = en(gen);
        const double product = t1_hat(s, t, e, 0.0) * M_PI * (s * s + t * t - 2.0 * e);
        CHECK(product == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("bottom_essential branches") {
    CHECK(bottom_essential(0.5, 0.0) == -0.25);
    CHECK(bottom_essential(2.0, 0.0) == -2.0);
    CHECK(bottom_essential(1.0 / std::sqrt(2.0), 0.0) == doctest::Approx(-0.25).epsilon(1e-15));

    // generalized triple: lowest attractive two-body energy wins
    CHECK(bottom_essential(CouplingTriple{-0.5, 0.5, -1.0}, 0.0) == -0.25);
    CHECK(bottom_essential(CouplingTriple{-2.0, 2.0, -1.0}, 0.0) == -2.0);
    CHECK(bottom_essential(CouplingTriple{-0.5, -3.0, -1.0}, 0.0) == -4.5);
    CHECK(bottom_essential(CouplingTriple{-1.0, 1.0, -0.5}, 0.0) ==
          doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(bottom_essential(CouplingTriple{1.0, 2.0, 3.0}, 0.0) == 0.0);
}

TEST_CASE("two_body_energies and pole consistency") {
    auto [imp, exc] = two_body_energies(1.0, 0.0);
    CHECK(imp == -0.5);
    CHECK(exc == -0.25);
    auto [imp2, exc2] = two_body_energies(1.0 / std::sqrt(2.0), 0.0);
    CHECK(imp2 == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(exc2 == -0.25);
    auto [imp3, exc3] = two_body_energies(1.0, 0.5);
    CHECK(imp3 == -0.5);
    CHECK(exc3 == -0.5);

    // 1/kappa - t0(0,E) changes sign exactly at the two-body energy
    for (double kappa : {0.3, 1.0, 1.546}) {
        for (double sg : {0.0, 0.4}) {
            const double e = -kappa * kappa / 2.0;
            const double eps = 1e-10 * std::abs(e);
            CHECK(1.0 / kappa - t0_hat(0.0, e - eps, sg) > 0.0);
            CHECK(1.0 / kappa - t0_hat(0.0, e + eps, sg) < 0.0);
        }
    }
    for (double sg : {0.0, 0.4}) {
        const double e = -1.0 / (4.0 * (1.0 - sg));
        const double eps = 1e-10 * std::abs(e);
        CHECK(1.0 - t3_hat(0.0, e - eps, sg) > 0.0);
        CHECK(1.0 - t3_hat(0.0, e + eps, sg) < 0.0);
    }
}

TEST_CASE("coupling triple validation") {
    CHECK_THROWS_AS(check_invertible(CouplingTriple{0.0, 1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(check_mass_fraction(1.0), std::invalid_argument);
    CHECK_THROWS_AS(check_mass_fraction(-0.1), std::invalid_argument);
    CHECK(exciton_impurity(0.7).a == -0.7);
    CHECK(exciton_impurity(0.7).b == 0.7);
    CHECK(exciton_impurity(0.7).c == -1.0);
    CHECK(exciton_impurity(0.7, 2.0).b == 2.0);
}
