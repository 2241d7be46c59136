#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace delta_spectra {

/// Quadrature rule representing momentum space R: Gauss-Legendre nodes u on
/// (-pi/2, pi/2) mapped through s = scale * tan(u), weights carrying the
/// Jacobian scale / cos^2(u).  Nodes are strictly increasing and, with the
/// weights, symmetric under s -> -s.
struct QuadratureGrid {
    int n = 0;
    double scale = 1.0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n must be even and >= 16, scale > 0.
QuadratureGrid build_grid(int n, double scale);

/// Diagonal of a Fourier multiplication operator: entries f(s_i), no weights.
Eigen::VectorXd discretize_multiplication(const std::function<double(double)>& f,
                                          const QuadratureGrid& grid);

/// Nystrom matrix of an integral operator with symmetrized weighting,
/// M_ij = sqrt(w_i) K(s_i, s_j) sqrt(w_j).  Exactly symmetric when K is.
Eigen::MatrixXd discretize_integral(const std::function<double(double, double)>& kernel,
                                    const QuadratureGrid& grid);

/// Serial reference for discretize_integral; kept for tests and benchmarks.
Eigen::MatrixXd discretize_integral_serial(const std::function<double(double, double)>& kernel,
                                           const QuadratureGrid& grid);

} // namespace delta_spectra
