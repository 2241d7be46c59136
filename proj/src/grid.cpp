#include "delta_spectra/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace delta_spectra {

namespace {

// Gauss-Legendre nodes/weights on (-1, 1) by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

} // namespace

QuadratureGrid build_grid(int n, double scale) {
    if (n < 16 || n % 2 != 0)
        throw std::invalid_argument("build_grid: n must be even and >= 16");
    if (!(scale > 0.0))
        throw std::invalid_argument("build_grid: scale must be positive");

    std::vector<double> x, w;
    gauss_legendre(n, x, w);

    QuadratureGrid grid;
    grid.n = n;
    grid.scale = scale;
    grid.nodes.resize(n);
    grid.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double u = x[i] * (M_PI / 2.0);
        const double cu = std::cos(u);
        grid.nodes[i] = scale * std::tan(u);
        grid.weights[i] = w[i] * (M_PI / 2.0) * scale / (cu * cu);
    }
    return grid;
}

Eigen::VectorXd discretize_multiplication(const std::function<double(double)>& f,
                                          const QuadratureGrid& grid) {
    Eigen::VectorXd d(grid.n);
    for (int i = 0; i < grid.n; ++i)
        d(i) = f(grid.nodes[i]);
    return d;
}

Eigen::MatrixXd discretize_integral_serial(const std::function<double(double, double)>& kernel,
                                           const QuadratureGrid& grid) {
    const int n = grid.n;
    Eigen::MatrixXd m(n, n);
    std::vector<double> sq(n);
    for (int i = 0; i < n; ++i)
        sq[i] = std::sqrt(grid.weights[i]);
    // (sq_i * sq_j) first, so a symmetric kernel gives a bitwise-symmetric matrix
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (sq[i] * sq[j]) * kernel(grid.nodes[i], grid.nodes[j]);
    return m;
}

Eigen::MatrixXd discretize_integral(const std::function<double(double, double)>& kernel,
                                    const QuadratureGrid& grid) {
    const int n = grid.n;
    Eigen::MatrixXd m(n, n);
    std::vector<double> sq(n);
    for (int i = 0; i < n; ++i)
        sq[i] = std::sqrt(grid.weights[i]);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (sq[i] * sq[j]) * kernel(grid.nodes[i], grid.nodes[j]);
    return m;
}

} // namespace delta_spectra
