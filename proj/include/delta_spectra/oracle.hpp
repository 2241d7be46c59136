#pragma once

#include <vector>

#include "delta_spectra/types.hpp"

namespace delta_spectra {

/// Real-space cross-check: finite differences on [-L, L]^2 with Dirichlet
/// boundary.  Kinetic part is the 5-point Laplacian plus the centered
/// 4-point cross stencil for -sigma d2/dxdy; each delta line contributes
/// coupling/h on its grid nodes (x=0 column, y=0 row, x=y diagonal).
/// Couplings may be zero here: a zero channel is simply absent.
struct BoxDiscretization {
    double half_width = 20.0;
    double spacing = 0.1;

    /// Interior points per axis; half_width/spacing must be integral.
    int points_per_axis() const;
};

struct OracleResult {
    double energy = 0.0;
    int iterations = 0;          // Lanczos steps used
    double residual = 0.0;       // ||A psi - E psi|| / |E|
    double boundary_amplitude = 0.0;  // max |psi| on the outermost ring / max |psi|
    bool box_warning = false;    // boundary amplitude above threshold
};

/// Lowest eigenvalue of the sparse symmetric discretization, by Lanczos
/// iteration with a fixed-seed start vector.  Throws on non-convergence.
OracleResult oracle_ground_state(const CouplingTriple& c, double sigma,
                                 const BoxDiscretization& box = {});

/// 1D helper: lowest eigenvalue of -1/2 d^2/dx^2 + coupling * delta(x) on
/// [-L, L], same grid-delta convention.  Exact value is -coupling^2/2.
double oracle_ground_state_1d(double coupling, double half_width = 20.0,
                              double spacing = 0.1);

/// max |A(i,j) - A(j,i)| of the assembled stencil matrix; zero for every
/// sigma by construction.  Diagnostic for the cross-derivative stencil.
double fd_matrix_asymmetry(const CouplingTriple& c, double sigma,
                           const BoxDiscretization& box);

struct OracleConvergenceRow {
    double spacing = 0.0;
    double energy = 0.0;
    double diff_prev = 0.0;
};

/// Energy per grid spacing (box fixed); differences shrink as h decreases.
std::vector<OracleConvergenceRow> oracle_convergence(const CouplingTriple& c, double sigma,
                                                     const std::vector<double>& spacings,
                                                     double half_width = 20.0);

} // namespace delta_spectra
