#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "delta_spectra/asymptotics.hpp"
#include "delta_spectra/kernels.hpp"
#include "delta_spectra/oracle.hpp"
#include "delta_spectra/solver.hpp"

using namespace delta_spectra;

namespace {

std::string detail(const char* fmt, double measured, double bound) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, measured, bound);
    return buf;
}

void check(ValidationReport& rep, const std::string& name, bool ok, std::string det) {
    rep.checks.push_back({name, ok, std::move(det)});
}

// Bisect the energy where the largest diagonal entry of a single-channel
// pencil crosses zero.
double single_channel_root(const std::function<double(double)>& max_entry, double e_guess) {
    double lo = e_guess - 1e-3, hi = e_guess + 1e-3;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (max_entry(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

ValidationReport run_validation(bool fast) {
    ValidationReport rep;
    const int n_base = fast ? 200 : 400;

    // -- quadrature calibration against closed-form integrals
    {
        const QuadratureGrid g200 = build_grid(200, 1.0);
        const QuadratureGrid g400 = build_grid(400, 1.0);
        double lorentz = 0.0, gauss = 0.0, sq = 0.0;
        for (int i = 0; i < 200; ++i) {
            lorentz += g200.weights[i] / (g200.nodes[i] * g200.nodes[i] + 1.0);
            gauss += g200.weights[i] * std::exp(-g200.nodes[i] * g200.nodes[i]);
        }
        for (int i = 0; i < 400; ++i) {
            const double d = g400.nodes[i] * g400.nodes[i] + 2.0;
            sq += g400.weights[i] / (d * d);
        }
        const double e1 = std::abs(lorentz - M_PI);
        const double e2 = std::abs(gauss - std::sqrt(M_PI));
        const double e3 = std::abs(sq - M_PI / (4.0 * std::sqrt(2.0)));
        check(rep, "quadrature_calibration", e1 < 1e-10 && e2 < 1e-8 && e3 < 1e-10,
              detail("max err %.2e (bound %.0e)", std::max({e1, e2, e3}), 1e-8));
    }

    // -- two-body pole anchors, closed form
    {
        double worst = 0.0;
        for (double kappa : {0.5, 1.0, 1.546}) {
            for (double sig : {0.0, 0.3}) {
                const auto [e_imp, e_exc] = two_body_energies(kappa, sig);
                worst = std::max(worst, std::abs(1.0 / kappa - t0_hat(0.0, e_imp, sig)));
                worst = std::max(worst, std::abs(1.0 - t3_hat(0.0, e_exc, sig)));
            }
        }
        check(rep, "two_body_pole_scalar", worst < 1e-10,
              detail("max |defect| %.2e (bound %.0e)", worst, 1e-10));
    }

    // -- discretized single-channel pencils singular at the pole energies
    {
        const QuadratureGrid g = build_grid(400, 0.05);
        double worst = 0.0;
        for (double kappa : {0.5, 1.0}) {
            auto f = [&](double e) {
                double m = -1e300;
                for (double s : g.nodes)
                    m = std::max(m, -1.0 / kappa + t0_hat(s, e, 0.0));
                return m;
            };
            worst = std::max(worst, std::abs(single_channel_root(f, -kappa * kappa / 2.0) +
                                             kappa * kappa / 2.0));
        }
        for (double sig : {0.0, 0.3}) {
            auto f = [&](double e) {
                double m = -1e300;
                for (double s : g.nodes)
                    m = std::max(m, -1.0 + t3_hat(s, e, sig));
                return m;
            };
            const double pole = -1.0 / (4.0 * (1.0 - sig));
            worst = std::max(worst, std::abs(single_channel_root(f, pole) - pole));
        }
        check(rep, "single_channel_pencil_poles", worst < 1e-6,
              detail("max |E - pole| %.2e (bound %.0e)", worst, 1e-6));
    }

    // -- exact symmetry of the assembled pencil; adjoint block consistency
    {
        const QuadratureGrid g = build_grid(100, 1.0);
        const PencilMatrix p = assemble(-0.7, {-0.5, 0.5, -1.0}, 0.3, g);
        const double asym = (p.mat - p.mat.transpose()).cwiseAbs().maxCoeff();

        const Eigen::MatrixXd t2 = discretize_integral(
            [&](double s, double t) { return t2_hat(s, t, -0.7, 0.3); }, g);
        const Eigen::MatrixXd t2swap = discretize_integral(
            [&](double s, double t) { return t2_hat(t, s, -0.7, 0.3); }, g);
        const double adj = (t2.transpose() - t2swap).cwiseAbs().maxCoeff();
        check(rep, "assembly_symmetry", asym == 0.0 && adj < 1e-15,
              detail("asym %.1e, adjoint defect %.1e", asym, adj));
    }

    // -- channel swap 1<->2 with (a,b)->(b,a) leaves the spectrum unchanged
    {
        const QuadratureGrid g = build_grid(100, 1.0);
        const auto d1 = diagnostics(assemble(-1.0, {-0.5, 0.5, -1.0}, 0.0, g));
        const auto d2 = diagnostics(assemble(-1.0, {0.5, -0.5, -1.0}, 0.0, g));
        const double dev = (d1.eigenvalues - d2.eigenvalues).cwiseAbs().maxCoeff();
        check(rep, "permutation_symmetry", dev < 1e-12,
              detail("max eigenvalue dev %.2e (bound %.0e)", dev, 1e-12));
    }

    // -- E(kappa) = E(-kappa)
    {
        const GridSpec gs{n_base, 0.0};
        const auto e1 = ground_state_energy({-0.5, 0.5, -1.0}, 0.0, gs);
        const auto e2 = ground_state_energy({0.5, -0.5, -1.0}, 0.0, gs);
        const double dev = std::abs(e1->energy - e2->energy);
        check(rep, "sign_flip_energy", dev < 1e-10,
              detail("|E(k)-E(-k)| = %.2e (bound %.0e)", dev, 1e-10));
    }

    // -- dilation covariance E(c) = lambda^2 E(c/lambda)
    {
        const auto [ea, eb] = scaling_check(1.0, 0.0, {n_base, 0.0}, 2.0);
        const double dev = std::abs(ea - eb);
        check(rep, "dilation_covariance", dev < 1e-6,
              detail("|E - l^2 E'| = %.2e (bound %.0e)", dev, 1e-6));
    }

    // -- eigenvalue branches increase with E
    {
        const QuadratureGrid g = build_grid(fast ? 100 : 200, 1.0);
        double worst = 1e300;
        for (double e : {-50.0, -10.0, -1.0, -0.5})
            for (double sig : {0.0, 0.5}) {
                const auto slopes = branch_slope(e, {-0.5, 0.5, -1.0}, sig, g, 1e-4);
                worst = std::min(worst, *std::min_element(slopes.begin(), slopes.end()));
            }
        check(rep, "branch_monotonicity", worst > -1e-8,
              detail("min slope %.2e (noise floor %.0e)", worst, -1e-8));
    }

    // -- deep-energy limit: spectrum collapses onto g^{-1}
    {
        const QuadratureGrid g = build_grid(200, 1.0);
        const CouplingTriple c{-0.5, 0.5, -1.0};
        const auto d = diagnostics(assemble(-100.0, c, 0.0, g));
        const double targets[3] = {1.0 / c.a, 1.0 / c.b, 1.0 / c.c};
        double dev = 0.0;
        for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
            double best = 1e300;
            for (double t : targets)
                best = std::min(best, std::abs(d.eigenvalues(i) - t));
            dev = std::max(dev, best);
        }
        const double rel = dev / 2.0;  // max |1/g|
        // perturbation norm shrinks with depth
        auto pnorm = [&](double e) {
            Eigen::MatrixXd m = assemble(e, c, 0.0, g).mat;
            for (int ch = 0; ch < 3; ++ch)
                for (int i = 0; i < g.n; ++i)
                    m(ch * g.n + i, ch * g.n + i) -= targets[ch];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
            return std::max(std::abs(es.eigenvalues()(0)),
                            std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
        };
        const double n1 = pnorm(-100.0), n2 = pnorm(-1000.0), n3 = pnorm(-10000.0);
        check(rep, "deep_energy_limit", rel <= 5e-2 && n1 > n2 && n2 > n3,
              detail("rel dev %.3f (bound %.2f); norm decay ok", rel, 5e-2));
    }

    // -- grid self-convergence at kappa = 0.5
    {
        const int n1 = fast ? 200 : 400;
        const int n2 = fast ? 400 : 800;
        const auto e1 = ground_state_energy(exciton_impurity(0.5), 0.0, {n1, 1.0}, {.tol = 1e-11});
        const auto e2 = ground_state_energy(exciton_impurity(0.5), 0.0, {n2, 1.0}, {.tol = 1e-11});
        const double dev = std::abs(e1->energy - e2->energy);
        check(rep, "grid_self_convergence", dev < 1e-6,
              detail("|E(2n)-E(n)| = %.2e (bound %.0e)", dev, 1e-6));
    }

    // -- beta: algebraic identity, sigma -> 0 limit, monotone decrease
    {
        const double t = 8.0 - 2.0 * M_PI;
        const double alt = 4.0 * t * t / (M_PI * M_PI);
        const double id_err = std::abs(beta_limit0() - alt);

        const double b2 = beta(1e-2), b3 = beta(1e-3), b4 = beta(1e-4);
        const double richardson = b4 + (b4 - b3) / 9.0;
        const double lim_err = std::abs(richardson - beta_limit0()) / beta_limit0();
        (void)b2;

        bool monotone = true;
        double prev = beta(0.05);
        for (double s = 0.10; s <= 0.651; s += 0.05) {
            const double b = beta(s);
            if (b >= prev) monotone = false;
            prev = b;
        }
        check(rep, "beta_limit_and_monotonicity",
              id_err < 1e-14 && lim_err < 1e-3 && monotone,
              detail("identity %.1e, limit rel err %.1e, decreasing", id_err, lim_err));
    }

    // -- quartic fit recovers a synthetic exact-quartic law
    {
        std::vector<std::pair<double, double>> samples;
        const double coeff = 1.2345;
        for (double k : {0.05, 0.08, 0.11, 0.14})
            samples.push_back({k, -0.25 - coeff * k * k * k * k});
        const QuarticFit fit = fit_quartic(samples, 0.0);
        const double dev = std::abs(fit.coefficient - coeff);
        check(rep, "quartic_fit_synthetic", dev < 1e-12 && fit.stderr_ < 1e-12,
              detail("|c - c0| = %.2e (bound %.0e)", dev, 1e-12));
    }

    // -- finite-difference oracle agrees with the pencil
    {
        const double h = fast ? 0.2 : 0.1;
        const double box = fast ? 12.0 : 20.0;
        const double tol_frac = fast ? 0.05 : 0.02;
        const auto pencil = ground_state_energy(exciton_impurity(0.5), 0.0, {n_base, 1.0});
        const OracleResult fd = oracle_ground_state(exciton_impurity(0.5), 0.0, {box, h});
        const double binding = -0.25 - pencil->energy;
        const double dev = std::abs(fd.energy - pencil->energy) / binding;

        const OracleResult exc = oracle_ground_state({0.0, 0.0, -1.0}, 0.0, {box, h});
        const double exc_dev = std::abs(exc.energy + 0.25);
        check(rep, "oracle_agreement", dev <= tol_frac && exc_dev < 2e-2,
              detail("pencil dev %.1f%% of binding; exciton dev %.3f", dev * 100.0, exc_dev));
    }

    // -- 1D grid-delta sanity
    {
        const double e = oracle_ground_state_1d(-1.0, 20.0, 0.1);
        const double dev = std::abs(e + 0.5);
        check(rep, "oracle_1d_delta", dev < 1e-2,
              detail("|E + 1/2| = %.2e (bound %.0e)", dev, 1e-2));
    }

    return rep;
}
