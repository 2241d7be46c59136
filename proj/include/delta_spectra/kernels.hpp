#pragma once

#include <utility>

#include "delta_spectra/types.hpp"

namespace delta_spectra {

// Fourier-space kernels of the free-resolvent trace operators.  The two
// multiplication symbols (t0, t3) and the two integral kernels (t1, t2)
// are evaluated at real energy strictly below the essential spectrum;
// every denominator/radicand is then positive.
//
//   t0(s)    = 1 / sqrt((1-sigma^2) s^2 - 2E)
//   t1(s,t)  = (1/pi) / (s^2 + t^2 + 2 sigma s t - 2E)
//   t2(s,t)  = (1/pi) / (t^2 + (s-t)^2 + 2 sigma t (s-t) - 2E)
//   t3(s)    = 1 / sqrt((1-sigma^2) s^2 - 4 (1-sigma) E)
//
// t1 is symmetric in (s,t); t2 is not -- its adjoint is t2 with the
// arguments swapped.

double t0_hat(double s, double energy, double sigma);
double t1_hat(double s, double t, double energy, double sigma);
double t2_hat(double s, double t, double energy, double sigma);
double t3_hat(double s, double energy, double sigma);

/// Bottom of the essential spectrum, min{-1/(4(1-sigma)), -kappa^2/2}.
double bottom_essential(double kappa, double sigma);

/// Generalized threshold for an arbitrary coupling triple: the lowest
/// two-body binding energy over the attractive channels (0 if none).
double bottom_essential(const CouplingTriple& c, double sigma);

/// The two-body binding energies (impurity-particle, exciton): the
/// energies where 1/kappa = t0_hat(0,E,sigma) and 1 = t3_hat(0,E,sigma).
std::pair<double, double> two_body_energies(double kappa, double sigma);

} // namespace delta_spectra
