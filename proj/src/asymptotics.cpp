#include "delta_spectra/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delta_spectra {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865476;
}

double beta(double sigma) {
    if (!(sigma > 0.0 && sigma < kInvSqrt2))
        throw std::domain_error("beta: sigma must lie in (0, 1/sqrt(2))");
    const double s2 = sigma * sigma;
    const double root = std::sqrt(1.0 - s2);
    // The arctangent argument is tan(2 asin(sigma)); on this domain the
    // principal branch returns 2 asin(sigma) itself.
    const double bracket = 6.0 * sigma * root
                         - (2.0 - sigma) * sigma * M_PI
                         - 8.0 * s2 * std::acos(std::sqrt(1.0 + sigma) / std::sqrt(2.0))
                         + std::atan(2.0 * sigma * root / (1.0 - 2.0 * s2));
    const double denom = (1.0 + sigma) * (1.0 - sigma) * (1.0 - sigma) * M_PI * M_PI * s2;
    return 4.0 * bracket * bracket / denom;
}

double beta_limit0() {
    const double t = 4.0 / M_PI - 1.0;
    return 16.0 * t * t;
}

double asymptotic_energy(double kappa, double sigma) {
    if (!(kappa > 0.0))
        throw std::domain_error("asymptotic_energy: kappa must be positive");
    if (!(sigma >= 0.0 && sigma < kInvSqrt2))
        throw std::domain_error("asymptotic_energy: sigma must lie in [0, 1/sqrt(2))");
    const double coeff = sigma == 0.0 ? beta_limit0() : beta(sigma);
    const double k2 = kappa * kappa;
    return -1.0 / (4.0 * (1.0 - sigma)) - coeff * k2 * k2;
}

QuarticFit fit_quartic(const std::vector<std::pair<double, double>>& samples, double sigma) {
    if (samples.size() < 3)
        throw std::invalid_argument("fit_quartic: need at least 3 samples");
    const double threshold = -1.0 / (4.0 * (1.0 - sigma));

    std::vector<double> ratios;
    ratios.reserve(samples.size());
    bool distinct = false;
    for (const auto& [kappa, energy] : samples) {
        if (!(kappa > 0.0) || kappa > 0.15 + 1e-12)
            throw std::invalid_argument("fit_quartic: kappa must lie in the asymptotic window (0, 0.15]");
        if (!std::isfinite(energy))
            throw std::invalid_argument("fit_quartic: non-finite energy sample");
        if (kappa != samples.front().first)
            distinct = true;
        const double x = kappa * kappa * kappa * kappa;
        ratios.push_back((threshold - energy) / x);
    }
    if (!distinct)
        throw std::invalid_argument("fit_quartic: degenerate fit, all kappa equal");

    const double m = static_cast<double>(ratios.size());
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= m;
    double var = 0.0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    var /= (m - 1.0);

    QuarticFit fit;
    fit.coefficient = mean;
    fit.stderr_ = std::sqrt(var / m);
    fit.samples = samples;
    fit.sigma = sigma;
    return fit;
}

} // namespace delta_spectra
