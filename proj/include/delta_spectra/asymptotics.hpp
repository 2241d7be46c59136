#pragma once

#include <utility>
#include <vector>

namespace delta_spectra {

/// Closed-form kappa^4 coefficient of the weak-coupling expansion,
///
///   beta(sigma) = 4 [ 6 sigma sqrt(1-sigma^2) - (2-sigma) sigma pi
///                     - 8 sigma^2 acos(sqrt(1+sigma)/sqrt(2))
///                     + atan(2 sigma sqrt(1-sigma^2) / (1-2 sigma^2)) ]^2
///                 / ( (1+sigma)(1-sigma)^2 pi^2 sigma^2 ),
///
/// principal branches, valid on 0 < sigma < 1/sqrt(2).  The arctangent
/// term equals 2 asin(sigma) on this domain.  sigma = 0 is rejected; use
/// beta_limit0() (the formula is 0/0 there).
double beta(double sigma);

/// The sigma -> 0 limit, 16 (4/pi - 1)^2 = 1.1945575809...
double beta_limit0();

/// Leading-order ground state energy -1/(4(1-sigma)) - beta(sigma) kappa^4.
double asymptotic_energy(double kappa, double sigma);

struct QuarticFit {
    double coefficient = 0.0;
    double stderr_ = 0.0;
    std::vector<std::pair<double, double>> samples;  // (kappa, energy)
    double sigma = 0.0;
};

/// Through-origin fit of the binding energy -1/(4(1-sigma)) - E against
/// kappa^4.  Least squares in the relative residual (b_i - c k_i^4)/k_i^4,
/// i.e. c = mean(b_i / k_i^4): the samples span several decades of kappa^4
/// and an absolute-residual fit would be dominated by the largest kappa,
/// where the O(kappa^6) term biases the coefficient.
/// Requires >= 3 samples with distinct kappa.
QuarticFit fit_quartic(const std::vector<std::pair<double, double>>& samples, double sigma);

} // namespace delta_spectra
