#include "delta_spectra/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

namespace delta_spectra {

namespace {

// Compressed sparse rows with a fixed-bandwidth stencil; assembled explicitly
// so symmetry can be checked entry by entry.
struct CsrMatrix {
    int rows = 0;
    std::vector<std::int64_t> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void matvec(const double* x, double* y) const {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < rows; ++i) {
            double acc = 0.0;
            for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
                acc += val[k] * x[col[k]];
            y[i] = acc;
        }
    }
};

// 5-point Laplacian + centered cross stencil + grid deltas, Dirichlet box.
CsrMatrix build_fd_matrix(const CouplingTriple& c, double sigma,
                          const BoxDiscretization& box) {
    const int m = box.points_per_axis();
    const double h = box.spacing;
    const double inv_h2 = 1.0 / (h * h);
    const int iz = (m - 1) / 2;  // node at coordinate 0 (m is odd)

    const int n = m * m;  // index = ix * m + iy
    CsrMatrix a;
    a.rows = n;
    a.row_ptr.assign(n + 1, 0);

    const bool cross = sigma != 0.0;
    // count entries per row first
    for (int ix = 0; ix < m; ++ix) {
        for (int iy = 0; iy < m; ++iy) {
            int cnt = 1;  // diagonal
            if (ix > 0) ++cnt;
            if (ix < m - 1) ++cnt;
            if (iy > 0) ++cnt;
            if (iy < m - 1) ++cnt;
            if (cross) {
                if (ix > 0 && iy > 0) ++cnt;
                if (ix > 0 && iy < m - 1) ++cnt;
                if (ix < m - 1 && iy > 0) ++cnt;
                if (ix < m - 1 && iy < m - 1) ++cnt;
            }
            a.row_ptr[ix * m + iy + 1] = cnt;
        }
    }
    for (int i = 0; i < n; ++i)
        a.row_ptr[i + 1] += a.row_ptr[i];
    a.col.resize(a.row_ptr[n]);
    a.val.resize(a.row_ptr[n]);

#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < m; ++ix) {
        for (int iy = 0; iy < m; ++iy) {
            const int row = ix * m + iy;
            std::int64_t k = a.row_ptr[row];
            auto put = [&](int cix, int ciy, double v) {
                a.col[k] = cix * m + ciy;
                a.val[k] = v;
                ++k;
            };
            // corner (cross-derivative) entries, -sigma/(4h^2) * (+1,+1),(-1,-1); + for mixed
            if (cross) {
                if (ix > 0 && iy > 0) put(ix - 1, iy - 1, -sigma * 0.25 * inv_h2);
                if (ix > 0 && iy < m - 1) put(ix - 1, iy + 1, sigma * 0.25 * inv_h2);
            }
            if (ix > 0) put(ix - 1, iy, -0.5 * inv_h2);
            if (iy > 0) put(ix, iy - 1, -0.5 * inv_h2);
            double d = 2.0 * inv_h2;
            if (iy == iz) d += c.a / h;  // a * delta(y)
            if (ix == iz) d += c.b / h;  // b * delta(x)
            if (ix == iy) d += c.c / h;  // c * delta(x - y)
            put(ix, iy, d);
            if (iy < m - 1) put(ix, iy + 1, -0.5 * inv_h2);
            if (ix < m - 1) put(ix + 1, iy, -0.5 * inv_h2);
            if (cross) {
                if (ix < m - 1 && iy > 0) put(ix + 1, iy - 1, sigma * 0.25 * inv_h2);
                if (ix < m - 1 && iy < m - 1) put(ix + 1, iy + 1, -sigma * 0.25 * inv_h2);
            }
        }
    }
    return a;
}

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

constexpr unsigned kLanczosSeed = 987654321u;

void seed_start_vector(std::vector<double>& v) {
    std::mt19937 gen(kLanczosSeed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : v) x = dist(gen);
    const double nv = norm(v);
    for (double& x : v) x /= nv;
}

double tridiag_min_eigenvalue(std::vector<double> d, std::vector<double> e,
                              std::vector<double>* eigvec) {
    const lapack_int k = static_cast<lapack_int>(d.size());
    lapack_int found = 0;
    std::vector<double> w(k);
    std::vector<double> z(eigvec ? k : 1);
    std::vector<lapack_int> isuppz(2);
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, eigvec ? 'V' : 'N', 'I', k, d.data(), e.data(), 0.0, 0.0, 1, 1,
        0.0, &found, w.data(), z.data(), k, isuppz.data());
    if (info != 0 || found < 1)
        throw std::runtime_error("oracle: tridiagonal eigensolve failed");
    if (eigvec)
        *eigvec = std::move(z);
    return w[0];
}

// Plain Lanczos for the smallest eigenvalue.  No reorthogonalization: the
// extreme Ritz value stays accurate despite orthogonality loss (ghosts only
// duplicate converged values).  A second pass rebuilds the Ritz vector from
// the stored recurrence coefficients.
struct LanczosOutcome {
    double theta = 0.0;
    int steps = 0;
    std::vector<double> ritz;  // eigenvector estimate
};

LanczosOutcome lanczos_smallest(const CsrMatrix& a, int maxit, double tol) {
    const int n = a.rows;
    std::vector<double> v(n), v_prev(n, 0.0), w(n);
    seed_start_vector(v);

    std::vector<double> alphas, betas;  // betas[k] links step k to k+1
    alphas.reserve(maxit);
    betas.reserve(maxit);

    double theta = 0.0, theta_prev = 1e300;
    int stable = 0;
    int steps = 0;
    std::vector<double> u;  // tridiagonal ground eigenvector

    double beta_prev = 0.0;
    for (int k = 0; k < maxit; ++k) {
        a.matvec(v.data(), w.data());
        if (beta_prev != 0.0)
            for (int i = 0; i < n; ++i) w[i] -= beta_prev * v_prev[i];
        const double alpha = dot(v, w);
        for (int i = 0; i < n; ++i) w[i] -= alpha * v[i];
        const double beta = norm(w);
        alphas.push_back(alpha);
        steps = k + 1;

        const bool breakdown = beta < 1e-13;
        if ((k >= 30 && k % 10 == 9) || breakdown || k == maxit - 1) {
            theta = tridiag_min_eigenvalue(alphas, betas, nullptr);
            if (std::abs(theta - theta_prev) < 1e-12 * std::max(1.0, std::abs(theta)))
                ++stable;
            else
                stable = 0;
            theta_prev = theta;
            if (stable >= 3 || breakdown || k == maxit - 1) {
                theta = tridiag_min_eigenvalue(alphas, betas, &u);
                const double resid = breakdown ? 0.0 : beta * std::abs(u[steps - 1]);
                if (resid < tol * std::max(1.0, std::abs(theta)) || breakdown)
                    break;
                if (k == maxit - 1)
                    throw std::runtime_error("oracle: Lanczos did not converge");
                stable = 0;
            }
        }
        if (breakdown)
            break;
        betas.push_back(beta);
        v_prev.swap(v);
        v.swap(w);  // w currently holds beta * v_next
        for (int i = 0; i < n; ++i) v[i] /= beta;
        beta_prev = beta;
    }

    // Second pass: replay the recurrence and accumulate the Ritz vector.
    LanczosOutcome out;
    out.theta = theta;
    out.steps = steps;
    out.ritz.assign(n, 0.0);
    std::fill(v_prev.begin(), v_prev.end(), 0.0);
    seed_start_vector(v);
    for (int k = 0; k < steps; ++k) {
        for (int i = 0; i < n; ++i) out.ritz[i] += u[k] * v[i];
        if (k == steps - 1)
            break;
        a.matvec(v.data(), w.data());
        if (k > 0)
            for (int i = 0; i < n; ++i) w[i] -= betas[k - 1] * v_prev[i];
        for (int i = 0; i < n; ++i) w[i] -= alphas[k] * v[i];
        v_prev.swap(v);
        v.swap(w);
        for (int i = 0; i < n; ++i) v[i] /= betas[k];
    }
    return out;
}

} // namespace

int BoxDiscretization::points_per_axis() const {
    if (!(half_width > 0.0) || !(spacing > 0.0))
        throw std::invalid_argument("oracle: box parameters must be positive");
    const double ratio = half_width / spacing;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw std::invalid_argument("oracle: half_width must be an integer multiple of spacing");
    return 2 * static_cast<int>(std::round(ratio)) - 1;
}

OracleResult oracle_ground_state(const CouplingTriple& c, double sigma,
                                 const BoxDiscretization& box) {
    check_mass_fraction(sigma);
    const int m = box.points_per_axis();
    if (m < 99)
        throw std::invalid_argument("oracle: box too coarse, need >= 100 points per axis");

    const CsrMatrix a = build_fd_matrix(c, sigma, box);
    const LanczosOutcome lz = lanczos_smallest(a, 6000, 1e-9);

    const int n = a.rows;
    std::vector<double> ay(n);
    a.matvec(lz.ritz.data(), ay.data());
    double rnorm = 0.0, ynorm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ay[i] - lz.theta * lz.ritz[i];
        rnorm += r * r;
        ynorm += lz.ritz[i] * lz.ritz[i];
    }

    double peak = 0.0, edge = 0.0;
    for (int ix = 0; ix < m; ++ix) {
        for (int iy = 0; iy < m; ++iy) {
            const double v = std::abs(lz.ritz[ix * m + iy]);
            peak = std::max(peak, v);
            if (ix == 0 || iy == 0 || ix == m - 1 || iy == m - 1)
                edge = std::max(edge, v);
        }
    }

    OracleResult r;
    r.energy = lz.theta;
    r.iterations = lz.steps;
    r.residual = std::sqrt(rnorm / ynorm) / std::max(1.0, std::abs(lz.theta));
    r.boundary_amplitude = peak > 0.0 ? edge / peak : 0.0;
    r.box_warning = r.boundary_amplitude > 1e-3;
    return r;
}

double oracle_ground_state_1d(double coupling, double half_width, double spacing) {
    BoxDiscretization box{half_width, spacing};
    const int m = box.points_per_axis();
    const int iz = (m - 1) / 2;
    const double inv_h2 = 1.0 / (spacing * spacing);

    // the 1D operator is tridiagonal; solve it directly
    std::vector<double> d(m, inv_h2), e(m - 1, -0.5 * inv_h2);
    d[iz] += coupling / spacing;
    return tridiag_min_eigenvalue(d, e, nullptr);
}

double fd_matrix_asymmetry(const CouplingTriple& c, double sigma,
                           const BoxDiscretization& box) {
    const CsrMatrix a = build_fd_matrix(c, sigma, box);
    double worst = 0.0;
    for (int i = 0; i < a.rows; ++i) {
        for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const int j = a.col[k];
            double mirror = 0.0;
            for (std::int64_t l = a.row_ptr[j]; l < a.row_ptr[j + 1]; ++l)
                if (a.col[l] == i) {
                    mirror = a.val[l];
                    break;
                }
            worst = std::max(worst, std::abs(a.val[k] - mirror));
        }
    }
    return worst;
}

std::vector<OracleConvergenceRow> oracle_convergence(const CouplingTriple& c, double sigma,
                                                     const std::vector<double>& spacings,
                                                     double half_width) {
    if (spacings.empty())
        throw std::invalid_argument("oracle_convergence: empty spacing list");
    for (std::size_t i = 1; i < spacings.size(); ++i)
        if (spacings[i] >= spacings[i - 1])
            throw std::invalid_argument("oracle_convergence: spacings must decrease");

    std::vector<OracleConvergenceRow> rows;
    for (std::size_t i = 0; i < spacings.size(); ++i) {
        OracleConvergenceRow row;
        row.spacing = spacings[i];
        row.energy = oracle_ground_state(c, sigma, {half_width, spacings[i]}).energy;
        row.diff_prev = i > 0 ? std::abs(row.energy - rows.back().energy) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace delta_spectra
