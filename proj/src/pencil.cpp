#include "delta_spectra/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

#include "delta_spectra/kernels.hpp"

namespace delta_spectra {

namespace {

template <bool Parallel>
PencilMatrix assemble_impl(double energy, const CouplingTriple& c, double sigma,
                           const QuadratureGrid& grid) {
    check_invertible(c);
    check_mass_fraction(sigma);
    const int n = grid.n;
    const double* s = grid.nodes.data();

    std::vector<double> sq(n);
    for (int i = 0; i < n; ++i)
        sq[i] = std::sqrt(grid.weights[i]);

    PencilMatrix p;
    p.mat = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    p.energy = energy;
    p.couplings = c;
    p.sigma = sigma;
    p.n = n;
    p.grid_scale = grid.scale;
    Eigen::MatrixXd& m = p.mat;

    // Diagonal multiplication blocks plus g^{-1}.
    for (int i = 0; i < n; ++i) {
        const double d0 = t0_hat(s[i], energy, sigma);
        m(i, i) = 1.0 / c.a + d0;
        m(n + i, n + i) = 1.0 / c.b + d0;
        m(2 * n + i, 2 * n + i) = 1.0 / c.c + t3_hat(s[i], energy, sigma);
    }

    // Off-diagonal Nystrom blocks.  Mirrored entries are assigned from the
    // same computed value, so the matrix is symmetric to the last bit.
#pragma omp parallel for schedule(static) if (Parallel)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double w = sq[i] * sq[j];
            const double v1 = w * t1_hat(s[i], s[j], energy, sigma);
            m(i, n + j) = v1;
            m(n + j, i) = v1;
            const double v2 = w * t2_hat(s[i], s[j], energy, sigma);
            m(2 * n + i, j) = v2;
            m(j, 2 * n + i) = v2;
            m(2 * n + i, n + j) = v2;
            m(n + j, 2 * n + i) = v2;
        }
    }
    return p;
}

} // namespace

PencilMatrix assemble(double energy, const CouplingTriple& c, double sigma,
                      const QuadratureGrid& grid) {
    return assemble_impl<true>(energy, c, sigma, grid);
}

PencilMatrix assemble_serial(double energy, const CouplingTriple& c, double sigma,
                             const QuadratureGrid& grid) {
    return assemble_impl<false>(energy, c, sigma, grid);
}

SpectralDiagnostics diagnostics(const PencilMatrix& m) {
    const lapack_int dim = m.size();
    Eigen::MatrixXd a = m.mat;  // dsyevd overwrites
    Eigen::VectorXd ev(dim);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', dim, a.data(), dim, ev.data());
    if (info != 0)
        throw std::runtime_error("diagnostics: dsyevd failed to converge (info=" +
                                 std::to_string(info) + ")");
    SpectralDiagnostics d;
    d.eigenvalues = ev;  // ascending from LAPACK
    d.neg_count = static_cast<int>(
        std::count_if(ev.data(), ev.data() + dim, [](double x) { return x < 0.0; }));
    d.min_abs = ev.cwiseAbs().minCoeff();
    return d;
}

int negative_eigenvalue_count(const PencilMatrix& m) {
    const lapack_int dim = m.size();
    Eigen::MatrixXd a = m.mat;  // dsytrf overwrites
    std::vector<lapack_int> ipiv(dim);
    const lapack_int info =
        LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', dim, a.data(), dim, ipiv.data());
    if (info < 0)
        throw std::runtime_error("negative_eigenvalue_count: dsytrf illegal argument");
    // info > 0 flags an exactly singular D block; its zero eigenvalue is
    // counted as nonnegative below, which is the right convention for nu.

    // Inertia from the 1x1 / 2x2 blocks of D.
    int neg = 0;
    for (lapack_int k = 0; k < dim;) {
        if (ipiv[k] > 0) {
            if (a(k, k) < 0.0) ++neg;
            ++k;
        } else {
            const double d11 = a(k, k);
            const double d21 = a(k + 1, k);
            const double d22 = a(k + 1, k + 1);
            const double det = d11 * d22 - d21 * d21;
            if (det < 0.0)
                ++neg;  // one negative, one positive
            else if (d11 + d22 < 0.0)
                neg += 2;
            k += 2;
        }
    }
    return neg;
}

std::vector<double> branch_slope(double energy, const CouplingTriple& c, double sigma,
                                 const QuadratureGrid& grid, double step) {
    if (!(step > 0.0))
        throw std::invalid_argument("branch_slope: step must be positive");
    const SpectralDiagnostics lo = diagnostics(assemble(energy, c, sigma, grid));
    const SpectralDiagnostics hi = diagnostics(assemble(energy + step, c, sigma, grid));
    std::vector<double> slopes(lo.eigenvalues.size());
    for (Eigen::Index i = 0; i < lo.eigenvalues.size(); ++i)
        slopes[i] = (hi.eigenvalues(i) - lo.eigenvalues(i)) / step;
    return slopes;
}

} // namespace delta_spectra
