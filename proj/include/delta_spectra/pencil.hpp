#pragma once

#include <vector>

#include <Eigen/Dense>

#include "delta_spectra/grid.hpp"
#include "delta_spectra/types.hpp"

namespace delta_spectra {

/// Discretized operator pencil G(E) = g^{-1} + tau R0(E) tau*, a real
/// symmetric 3n x 3n matrix with block layout
///
///        | 1/a + T0     T1        T2^T  |
///   G =  |   T1      1/b + T0     T2^T  |
///        |   T2         T2      1/c + T3|
///
/// where T0, T3 are diagonal and T1, T2 carry the sqrt(w) weighting.
/// Symmetry is exact by construction, not approximate.
struct PencilMatrix {
    Eigen::MatrixXd mat;
    double energy = 0.0;
    CouplingTriple couplings;
    double sigma = 0.0;
    int n = 0;
    double grid_scale = 1.0;

    int size() const { return static_cast<int>(mat.rows()); }
};

struct SpectralDiagnostics {
    Eigen::VectorXd eigenvalues;  // sorted ascending
    int neg_count = 0;            // eigenvalues < 0
    double min_abs = 0.0;         // smallest |eigenvalue|
};

/// Assemble G(E).  Caller keeps E strictly below the relevant threshold;
/// couplings must all be nonzero.
PencilMatrix assemble(double energy, const CouplingTriple& c, double sigma,
                      const QuadratureGrid& grid);

/// Serial reference assembly (identical output, no OpenMP).
PencilMatrix assemble_serial(double energy, const CouplingTriple& c, double sigma,
                             const QuadratureGrid& grid);

/// Full symmetric eigendecomposition (eigenvalues only).
/// Throws on eigensolver non-convergence.
SpectralDiagnostics diagnostics(const PencilMatrix& m);

/// Number of negative eigenvalues nu(E) via the inertia of an LDL^T
/// (Bunch-Kaufman) factorization; equals diagnostics().neg_count but
/// avoids the full eigendecomposition.
int negative_eigenvalue_count(const PencilMatrix& m);

/// Finite-difference slopes of the sorted eigenvalue branches between
/// E and E + step.  All branches of G are increasing in E below the
/// threshold, so every slope should be positive.
std::vector<double> branch_slope(double energy, const CouplingTriple& c, double sigma,
                                 const QuadratureGrid& grid, double step);

} // namespace delta_spectra
