#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delta_spectra/pencil.hpp"
#include "delta_spectra/types.hpp"

namespace delta_spectra {

/// Grid request for the solver entry points.  scale <= 0 means automatic:
/// max(1, sqrt(2 |bottom|)), tracking the momentum scale of the threshold.
struct GridSpec {
    int n = 400;
    double scale = 0.0;
};

struct SolverOptions {
    double tol = 1e-9;              // bisection width on E
    double threshold_margin = 1e-6; // delta_th, relative to |bottom|
    bool refine = true;             // near-threshold re-solve on a finer grid
};

struct BoundStateResult {
    double energy = 0.0;
    double residual = 0.0;  // min |eigenvalue| of G at the located energy
    int n = 0;
    double scale = 0.0;
    bool refined = false;
    bool converged = true;
};

struct CriticalChargeResult {
    double kappa_c = 0.0;
    double bracket_lo = 0.0;  // bound state exists here
    double bracket_hi = 0.0;  // and not here
    double margin = 0.0;      // threshold margin used (absolute)
    double sigma = 0.0;
};

struct SweepRecord {
    double kappa = 0.0;
    std::optional<BoundStateResult> state;
    double bottom = 0.0;
    std::optional<double> asymptote;
    std::string error;  // nonempty when the row failed
};

struct SweepTable {
    std::vector<SweepRecord> records;
    double sigma = 0.0;
    GridSpec grid;
};

struct ConvergenceRow {
    int n = 0;
    double scale = 0.0;
    std::optional<double> energy;
    double diff_prev = 0.0;  // |E - previous E at same scale|, 0 for first
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double extrapolated = 0.0;  // Richardson-style estimate from finest level
    double error_estimate = 0.0;
};

/// Locate the ground state of H as the deepest zero crossing of the pencil
/// eigenvalue branches.  Scans nu(E) from E_deep = 50 x bottom up to
/// bottom - delta_th, bisects the first decrement, and re-solves shallow
/// roots (binding < 1e-3 |bottom|) on a doubled, near-threshold grid.
/// Returns empty when nu is constant on the window: no discrete spectrum
/// above the margin.
std::optional<BoundStateResult> ground_state_energy(const CouplingTriple& c, double sigma,
                                                    const GridSpec& grid = {},
                                                    const SolverOptions& opt = {});

/// nu(E_deep) - nu(bottom - margin) on the given grid (no refinement).
/// margin <= 0 selects the default threshold margin.
int count_bound_states(const CouplingTriple& c, double sigma, const GridSpec& grid = {},
                       double margin = 0.0);

/// Existence for H_{kappa,kappa_tilde}: at least one branch crossing in the
/// search window, including the near-threshold rescan of shallow states.
bool bound_state_exists(double kappa, double kappa_tilde, double sigma,
                        const GridSpec& grid = {});

/// Bisection on kappa over bound_state_exists(kappa, kappa, sigma), initial
/// bracket [1/sqrt(2), 4].  tol is the final bracket width.  Throws when
/// existence is not monotone on the initial bracket.
CriticalChargeResult critical_charge(double sigma, double tol = 5e-3,
                                     const GridSpec& grid = {});

/// Per-kappa ground states over a strictly increasing positive grid.
/// Rows are computed independently and emitted in kappa order.
SweepTable sweep_energy(const std::vector<double>& kappas, double sigma,
                        const GridSpec& grid = {}, bool with_asymptote = false,
                        const SolverOptions& opt = {});

/// Dilation covariance check: returns (E at couplings c_kappa, lambda^2 x E at
/// couplings c_kappa / lambda with the grid rescaled by 1/lambda).  The two
/// energies agree to quadrature accuracy.
std::pair<double, double> scaling_check(double kappa, double sigma, const GridSpec& grid,
                                        double lambda);

/// Ground-state energy per (n, scale) with successive differences and a
/// Richardson-style extrapolation over the finest scale's n sequence.
ConvergenceStudy convergence_study(const CouplingTriple& c, double sigma,
                                   const std::vector<int>& n_values,
                                   const std::vector<double>& scale_values,
                                   const SolverOptions& opt = {});

} // namespace delta_spectra
