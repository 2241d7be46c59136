#include "delta_spectra/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace delta_spectra {

double t0_hat(double s, double energy, double sigma) {
    const double radicand = (1.0 - sigma * sigma) * s * s - 2.0 * energy;
    if (radicand <= 0.0)
        throw std::domain_error("t0_hat: radicand not positive");
    return 1.0 / std::sqrt(radicand);
}

double t1_hat(double s, double t, double energy, double sigma) {
    // grouped so the value is bit-identical under (s,t) swap
    const double denom = s * s + t * t + 2.0 * sigma * (s * t) - 2.0 * energy;
    if (denom <= 0.0)
        throw std::domain_error("t1_hat: denominator not positive");
    return M_1_PI / denom;
}

double t2_hat(double s, double t, double energy, double sigma) {
    const double u = s - t;
    const double denom = t * t + u * u + 2.0 * sigma * t * u - 2.0 * energy;
    if (denom <= 0.0)
        throw std::domain_error("t2_hat: denominator not positive");
    return M_1_PI / denom;
}

double t3_hat(double s, double energy, double sigma) {
    const double radicand = (1.0 - sigma * sigma) * s * s - 4.0 * (1.0 - sigma) * energy;
    if (radicand <= 0.0)
        throw std::domain_error("t3_hat: radicand not positive");
    return 1.0 / std::sqrt(radicand);
}

double bottom_essential(double kappa, double sigma) {
    check_mass_fraction(sigma);
    return std::min(-1.0 / (4.0 * (1.0 - sigma)), -kappa * kappa / 2.0);
}

double bottom_essential(const CouplingTriple& c, double sigma) {
    check_mass_fraction(sigma);
    double bottom = 0.0;
    if (c.a < 0.0) bottom = std::min(bottom, -c.a * c.a / 2.0);
    if (c.b < 0.0) bottom = std::min(bottom, -c.b * c.b / 2.0);
    if (c.c < 0.0) bottom = std::min(bottom, -c.c * c.c / (4.0 * (1.0 - sigma)));
    return bottom;
}

std::pair<double, double> two_body_energies(double kappa, double sigma) {
    check_mass_fraction(sigma);
    return {-kappa * kappa / 2.0, -1.0 / (4.0 * (1.0 - sigma))};
}

} // namespace delta_spectra
