#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "delta_spectra/asymptotics.hpp"


using namespace delta_spectra;

TEST_CASE("beta_limit0 closed form and algebraic identity") {
    CHECK(std::abs(beta_limit0() - 1.1945575) < 1e-7);
    const double t = 8.0 - 2.0 * M_PI;
    CHECK(std::abs(beta_limit0() - 4.0 * t * t / (M_PI * M_PI)) < 1e-14);
}

TEST_CASE("beta against an independent high-precision evaluation") {
    // reference values computed with 40-digit arithmetic
    CHECK(beta(0.1) == doctest::Approx(0.9120239697115287).epsilon(1e-12));
    CHECK(beta(0.2) == doctest::Approx(0.6881504265971317).epsilon(1e-12));
    CHECK(beta(0.3) == doctest::Approx(0.5095160193881778).epsilon(1e-12));
    CHECK(beta(0.5) == doctest::Approx(0.2529269285012414).epsilon(1e-12));
    CHECK(beta(0.65) == doctest::Approx(0.1266137032986229).epsilon(1e-12));
}

TEST_CASE("beta domain and limit behaviour") {
    CHECK_THROWS_AS(beta(0.0), std::domain_error);
    CHECK_THROWS_AS(beta(1.0 / std::sqrt(2.0)), std::domain_error);
    CHECK_THROWS_AS(beta(0.9), std::domain_error);

    CHECK(std::abs(beta(1e-3) - beta_limit0()) < 1e-2);

    // Richardson extrapolation of the sigma -> 0 limit
    const double b3 = beta(1e-3), b4 = beta(1e-4);
    const double lim = b4 + (b4 - b3) / 9.0;
    CHECK(std::abs(lim - beta_limit0()) / beta_limit0() < 1e-3);
}

TEST_CASE("beta is positive, decreasing, and branch-jump free") {
    double prev = beta(0.05);
    CHECK(prev > 0.0);
    for (double s = 0.10; s < 0.651; s += 0.05) {
        const double b = beta(s);
        CHECK(b > 0.0);
        CHECK(b < prev);
        prev = b;
    }
    // a branch error in acos/atan would show as an O(1) jump; the true slope
    // is bounded by ~3 on this range
    double worst = 0.0;
    for (double s = 1e-3; s < 0.7; s += 1e-4)
        worst = std::max(worst, std::abs(beta(s + 1e-4) - beta(s)));
    CHECK(worst < 3e-4);

    // the arctangent term is tan(2 asin sigma) on the principal branch
    for (double s = 0.05; s < 0.7; s += 0.05) {
        const double arg = 2.0 * s * std::sqrt(1.0 - s * s) / (1.0 - 2.0 * s * s);
        CHECK(std::atan(arg) == doctest::Approx(2.0 * std::asin(s)).epsilon(1e-14));
    }
}

TEST_CASE("asymptotic_energy") {
    CHECK(asymptotic_energy(0.1, 0.0) == doctest::Approx(-0.2501194558).epsilon(1e-9));
    CHECK(asymptotic_energy(0.2, 0.0) == doctest::Approx(-0.2519112921).epsilon(1e-9));
    CHECK(asymptotic_energy(1e-6, 0.3) == doctest::Approx(-1.0 / 2.8).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_energy(-0.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(asymptotic_energy(0.1, 0.8), std::domain_error);
}

TEST_CASE("fit_quartic recovers synthetic data exactly") {
    std::vector<std::pair<double, double>> samples;
    const double c = 0.7321;
    for (double k : {0.04, 0.07, 0.10, 0.13})
        samples.push_back({k, -0.25 - c * k * k * k * k});
    const QuarticFit fit = fit_quartic(samples, 0.0);
    CHECK(std::abs(fit.coefficient - c) < 1e-12);
    CHECK(fit.stderr_ < 1e-12);
    CHECK(fit.samples.size() == 4);
}

TEST_CASE("fit_quartic round-trips the asymptotic model") {
    for (double sg : {0.0, 0.25}) {
        std::vector<std::pair<double, double>> samples;
        for (double k : {0.05, 0.08, 0.11, 0.14})
            samples.push_back({k, asymptotic_energy(k, sg)});
        const QuarticFit fit = fit_quartic(samples, sg);
        const double target = sg == 0.0 ? beta_limit0() : beta(sg);
        CHECK(std::abs(fit.coefficient - target) < 1e-12);
    }
}

TEST_CASE("fit_quartic rejects degenerate input") {
    std::vector<std::pair<double, double>> two = {{0.05, -0.26}, {0.10, -0.27}};
    CHECK_THROWS_AS(fit_quartic(two, 0.0), std::invalid_argument);

    std::vector<std::pair<double, double>> same = {{0.1, -0.26}, {0.1, -0.26}, {0.1, -0.26}};
    CHECK_THROWS_AS(fit_quartic(same, 0.0), std::invalid_argument);

    std::vector<std::pair<double, double>> wide = {{0.1, -0.26}, {0.2, -0.27}, {0.3, -0.28}};
    CHECK_THROWS_AS(fit_quartic(wide, 0.0), std::invalid_argument);
}
