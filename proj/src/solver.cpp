#include "delta_spectra/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "delta_spectra/asymptotics.hpp"
#include "delta_spectra/kernels.hpp"

extern "C" void openblas_set_num_threads(int);
extern "C" int openblas_get_num_threads(void);

namespace delta_spectra {

namespace {

int nu(double energy, const CouplingTriple& c, double sigma, const QuadratureGrid& grid) {
    return negative_eigenvalue_count(assemble(energy, c, sigma, grid));
}

// Deepest zero crossing of the pencil branches on the window
// (bottom - x_hi, bottom - x_lo), located by nu-counting.  The branches are
// monotone in E, so nu is nonincreasing along the ladder and the first
// decrement can be binary-searched.  Returns nothing when nu is constant.
std::optional<double> scan_and_bisect(const CouplingTriple& c, double sigma,
                                      const QuadratureGrid& grid, double bottom,
                                      double x_hi, double x_lo, double tol,
                                      int ladder = 40) {
    std::vector<double> xs(ladder);
    const double ratio = std::pow(x_lo / x_hi, 1.0 / (ladder - 1));
    xs[0] = x_hi;
    for (int i = 1; i < ladder; ++i)
        xs[i] = xs[i - 1] * ratio;
    xs[ladder - 1] = x_lo;

    const int nu_deep = nu(bottom - xs[0], c, sigma, grid);
    if (nu(bottom - xs[ladder - 1], c, sigma, grid) == nu_deep)
        return std::nullopt;

    int lo = 0, hi = ladder - 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (nu(bottom - xs[mid], c, sigma, grid) == nu_deep)
            lo = mid;
        else
            hi = mid;
    }

    double e_lo = bottom - xs[lo];  // nu == nu_deep here
    double e_hi = bottom - xs[hi];  // first decrement seen here
    while (e_hi - e_lo > tol) {
        const double mid = 0.5 * (e_lo + e_hi);
        if (nu(mid, c, sigma, grid) < nu_deep)
            e_hi = mid;
        else
            e_lo = mid;
    }
    return 0.5 * (e_lo + e_hi);
}

double resolve_scale(const GridSpec& spec, double momentum_scale) {
    return spec.scale > 0.0 ? spec.scale : std::max(1.0, momentum_scale);
}

BoundStateResult make_result(double energy, const CouplingTriple& c, double sigma,
                             const QuadratureGrid& grid, bool refined, bool converged) {
    BoundStateResult r;
    r.energy = energy;
    r.residual = diagnostics(assemble(energy, c, sigma, grid)).min_abs;
    r.n = grid.n;
    r.scale = grid.scale;
    r.refined = refined;
    r.converged = converged;
    return r;
}

} // namespace

std::optional<BoundStateResult> ground_state_energy(const CouplingTriple& c, double sigma,
                                                    const GridSpec& spec,
                                                    const SolverOptions& opt) {
    check_invertible(c);
    check_mass_fraction(sigma);
    if (!(opt.tol > 0.0))
        throw std::invalid_argument("ground_state_energy: tol must be positive");

    const double bottom = bottom_essential(c, sigma);
    if (bottom >= 0.0)
        return std::nullopt;  // no attractive channel, nothing below 0
    const double ab = std::abs(bottom);
    const double mom = std::sqrt(2.0 * ab);
    const double delta = opt.threshold_margin * ab;

    const QuadratureGrid base = build_grid(spec.n, resolve_scale(spec, mom));
    const std::optional<double> e1 =
        scan_and_bisect(c, sigma, base, bottom, 49.0 * ab, delta, opt.tol);

    if (!opt.refine)
        return e1 ? std::optional(make_result(*e1, c, sigma, base, false, true))
                  : std::nullopt;

    if (e1 && (bottom - *e1) >= 1e-3 * ab)
        return make_result(*e1, c, sigma, base, false, true);

    if (e1) {
        // Shallow root: the branch eigenvector concentrates on a momentum
        // window of width ~ sqrt(binding), which the base grid may not
        // resolve.  Re-solve with n doubled and the map scale pulled in.
        const double binding = bottom - *e1;
        const double s2 = std::clamp(20.0 * std::sqrt(binding), 0.02 * mom, base.scale);
        const QuadratureGrid fine = build_grid(2 * spec.n, s2);
        const std::optional<double> e2 =
            scan_and_bisect(c, sigma, fine, bottom, 1e-2 * ab, delta, opt.tol);
        if (e2)
            return make_result(*e2, c, sigma, fine, true, true);
        return make_result(*e1, c, sigma, base, true, false);  // refinement lost it
    }

    // Nothing at base resolution: states shallower than the base grid can
    // resolve may still hide near the threshold.  One rescan there.
    const QuadratureGrid fine = build_grid(2 * spec.n, 0.02 * mom);
    const std::optional<double> e2 =
        scan_and_bisect(c, sigma, fine, bottom, 1e-3 * ab, delta, opt.tol, 30);
    if (e2)
        return make_result(*e2, c, sigma, fine, true, true);
    return std::nullopt;
}

int count_bound_states(const CouplingTriple& c, double sigma, const GridSpec& spec,
                       double margin) {
    check_invertible(c);
    check_mass_fraction(sigma);
    const double bottom = bottom_essential(c, sigma);
    if (bottom >= 0.0)
        return 0;
    const double ab = std::abs(bottom);
    if (margin <= 0.0)
        margin = 1e-6 * ab;
    const QuadratureGrid grid = build_grid(spec.n, resolve_scale(spec, std::sqrt(2.0 * ab)));
    return nu(50.0 * bottom, c, sigma, grid) - nu(bottom - margin, c, sigma, grid);
}

bool bound_state_exists(double kappa, double kappa_tilde, double sigma,
                        const GridSpec& spec) {
    if (!(kappa > 0.0) || !(kappa_tilde > 0.0))
        throw std::invalid_argument("bound_state_exists: couplings must be positive");
    const CouplingTriple c = exciton_impurity(kappa, kappa_tilde);
    if (count_bound_states(c, sigma, spec) >= 1)
        return true;
    // Recount the near-threshold window on the refined grid; shallow states
    // are invisible at base resolution (see ground_state_energy).
    const double bottom = bottom_essential(c, sigma);
    const double ab = std::abs(bottom);
    const QuadratureGrid fine = build_grid(2 * spec.n, 0.02 * std::sqrt(2.0 * ab));
    return nu(bottom - 1e-3 * ab, c, sigma, fine) - nu(bottom - 1e-6 * ab, c, sigma, fine) >= 1;
}

CriticalChargeResult critical_charge(double sigma, double tol, const GridSpec& spec) {
    check_mass_fraction(sigma);
    if (!(tol > 0.0))
        throw std::invalid_argument("critical_charge: tol must be positive");

    double lo = 1.0 / std::sqrt(2.0);
    double hi = 4.0;
    if (!bound_state_exists(lo, lo, sigma, spec) || bound_state_exists(hi, hi, sigma, spec))
        throw std::runtime_error("critical_charge: existence not monotone on [1/sqrt(2), 4]");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (bound_state_exists(mid, mid, sigma, spec))
            lo = mid;
        else
            hi = mid;
    }

    CriticalChargeResult r;
    r.kappa_c = 0.5 * (lo + hi);
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.margin = 1e-6 * std::abs(bottom_essential(exciton_impurity(r.kappa_c), sigma));
    r.sigma = sigma;
    return r;
}

SweepTable sweep_energy(const std::vector<double>& kappas, double sigma,
                        const GridSpec& spec, bool with_asymptote,
                        const SolverOptions& opt) {
    if (kappas.empty())
        throw std::invalid_argument("sweep_energy: empty kappa list");
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        if (!(kappas[i] > 0.0) || (i > 0 && kappas[i] <= kappas[i - 1]))
            throw std::invalid_argument("sweep_energy: kappas must be positive and strictly increasing");
    }

    SweepTable table;
    table.sigma = sigma;
    table.grid = spec;
    table.records.resize(kappas.size());

    // Rows are independent; keep BLAS single-threaded under the row loop so
    // the two parallel layers do not oversubscribe.
    const int blas_threads = openblas_get_num_threads();
    openblas_set_num_threads(1);
    const std::int64_t rows = static_cast<std::int64_t>(kappas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < rows; ++i) {
        SweepRecord& rec = table.records[i];
        rec.kappa = kappas[i];
        const CouplingTriple c = exciton_impurity(kappas[i]);
        rec.bottom = bottom_essential(kappas[i], sigma);
        try {
            rec.state = ground_state_energy(c, sigma, spec, opt);
            if (with_asymptote && sigma < 1.0 / std::sqrt(2.0))
                rec.asymptote = asymptotic_energy(kappas[i], sigma);
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
    }
    openblas_set_num_threads(blas_threads);
    return table;
}

std::pair<double, double> scaling_check(double kappa, double sigma, const GridSpec& spec,
                                        double lambda) {
    if (!(kappa > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("scaling_check: kappa and lambda must be positive");
    const CouplingTriple c = exciton_impurity(kappa);
    const double scale = resolve_scale(spec, std::sqrt(2.0 * std::abs(bottom_essential(c, sigma))));

    const auto direct = ground_state_energy(c, sigma, GridSpec{spec.n, scale});
    const auto rescaled =
        ground_state_energy(scaled(c, 1.0 / lambda), sigma, GridSpec{spec.n, scale / lambda});
    if (!direct || !rescaled)
        throw std::runtime_error("scaling_check: no bound state at the requested coupling");
    return {direct->energy, lambda * lambda * rescaled->energy};
}

ConvergenceStudy convergence_study(const CouplingTriple& c, double sigma,
                                   const std::vector<int>& n_values,
                                   const std::vector<double>& scale_values,
                                   const SolverOptions& opt) {
    if (n_values.empty() || scale_values.empty())
        throw std::invalid_argument("convergence_study: empty parameter lists");
    if (!std::is_sorted(n_values.begin(), n_values.end()))
        throw std::invalid_argument("convergence_study: n_values must be increasing");

    ConvergenceStudy study;
    std::vector<double> finest;  // energies along the last scale's n sequence
    for (double scale : scale_values) {
        std::optional<double> prev;
        for (int n : n_values) {
            ConvergenceRow row;
            row.n = n;
            row.scale = scale;
            const auto r = ground_state_energy(c, sigma, GridSpec{n, scale}, opt);
            if (r) {
                row.energy = r->energy;
                row.diff_prev = prev ? std::abs(r->energy - *prev) : 0.0;
                prev = r->energy;
                if (scale == scale_values.back())
                    finest.push_back(r->energy);
            }
            study.rows.push_back(row);
        }
    }

    if (finest.size() >= 3) {
        const double e1 = finest[finest.size() - 3];
        const double e2 = finest[finest.size() - 2];
        const double e3 = finest[finest.size() - 1];
        const double d21 = e2 - e1;
        const double d32 = e3 - e2;
        if (d21 != 0.0 && std::abs(d32 / d21) < 1.0) {
            const double r = d32 / d21;
            study.extrapolated = e3 + d32 * r / (1.0 - r);
            study.error_estimate = std::abs(study.extrapolated - e3);
            return study;
        }
    }
    if (!finest.empty()) {
        study.extrapolated = finest.back();
        study.error_estimate =
            finest.size() >= 2 ? std::abs(finest.back() - finest[finest.size() - 2]) : 0.0;
    }
    return study;
}

} // namespace delta_spectra
