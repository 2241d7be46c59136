// Compares the OpenMP kernels against their serial reference implementations:
// pencil assembly and the finite-difference oracle solve.

#include <cmath>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "delta_spectra/kernels.hpp"
#include "delta_spectra/oracle.hpp"
#include "delta_spectra/pencil.hpp"

using namespace delta_spectra;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = omp_get_wtime();
        f();
        best = std::min(best, omp_get_wtime() - t0);
    }
    return best;
}

} // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%-28s %10s %10s %8s %10s\n", "kernel", "serial[s]", "openmp[s]", "speedup",
                "max|diff|");

    const CouplingTriple c = exciton_impurity(0.5);
    for (int n : {200, 400, 800}) {
        const QuadratureGrid grid = build_grid(n, 1.0);
        PencilMatrix ms, mp;
        const double ts = time_best_of(3, [&] { ms = assemble_serial(-0.5, c, 0.0, grid); });
        const double tp = time_best_of(3, [&] { mp = assemble(-0.5, c, 0.0, grid); });
        const double diff = (ms.mat - mp.mat).cwiseAbs().maxCoeff();
        char label[64];
        std::snprintf(label, sizeof label, "assemble 3n=%d", 3 * n);
        std::printf("%-28s %10.4f %10.4f %7.2fx %10.1e\n", label, ts, tp, ts / tp, diff);
    }

    // the oracle's runtime is dominated by the CSR matvec inside Lanczos
    {
        const BoxDiscretization box{20.0, 0.1};
        const int m = box.points_per_axis();
        OracleResult r1, r2;
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        const double ts = time_best_of(1, [&] { r1 = oracle_ground_state(c, 0.0, box); });
        omp_set_num_threads(saved);
        const double tp = time_best_of(1, [&] { r2 = oracle_ground_state(c, 0.0, box); });
        char label[64];
        std::snprintf(label, sizeof label, "oracle solve %dx%d", m, m);
        std::printf("%-28s %10.4f %10.4f %7.2fx %10.1e\n", label, ts, tp, ts / tp,
                    std::abs(r1.energy - r2.energy));
    }
    return 0;
}
