// delta-spectra: discrete spectrum of the 1D exciton-impurity contact model.
//
// Subcommands: energy, sweep, critical-charge, beta, validate, oracle.
// Exit codes: 0 success, 1 validation-suite failure, 2 usage error,
//             3 no bound state (informative), 4 numerical failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "delta_spectra/asymptotics.hpp"
#include "delta_spectra/kernels.hpp"
#include "delta_spectra/oracle.hpp"
#include "delta_spectra/solver.hpp"
#include "delta_spectra/version.hpp"
#include "validate.hpp"

using json = nlohmann::ordered_json;
using namespace delta_spectra;

namespace {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kNoBoundState = 3,
    kNumerical = 4,
};

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Resolution order: built-in defaults < config file < command-line flags.
struct ConfigFile {
    json data = json::object();

    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw CLI::ValidationError("--config", "cannot open config file: " + path);
        try {
            data = json::parse(in);
        } catch (const std::exception& e) {
            throw CLI::ValidationError("--config", std::string("bad config JSON: ") + e.what());
        }
        if (!data.is_object())
            throw CLI::ValidationError("--config", "config must be a JSON object");
    }

    template <typename T>
    void fill(const CLI::App* cmd, const std::string& flag, const std::string& key, T& var) const {
        if (cmd->count(flag) == 0 && data.contains(key))
            var = data.at(key).get<T>();
    }
};

struct CommonParams {
    double sigma = 0.0;
    int grid_n = 400;
    double grid_scale = 0.0;  // 0 = automatic
    double tol = 1e-9;
    std::string output;
};

void add_common(CLI::App* cmd, CommonParams& p, bool with_tol = true) {
    cmd->add_option("--sigma", p.sigma, "mass fraction sigma = m/(m+M)");
    cmd->add_option("--grid-n", p.grid_n, "quadrature node count (even, >= 16)");
    cmd->add_option("--grid-scale", p.grid_scale, "tan-map scale; 0 selects automatic");
    if (with_tol)
        cmd->add_option("--tol", p.tol, "energy bisection tolerance");
    cmd->add_option("-o,--output", p.output, "output path (default: stdout)");
}

void resolve_common(const CLI::App* cmd, const ConfigFile& cfg, CommonParams& p) {
    cfg.fill(cmd, "--sigma", "sigma", p.sigma);
    cfg.fill(cmd, "--grid-n", "grid_n", p.grid_n);
    cfg.fill(cmd, "--grid-scale", "grid_scale", p.grid_scale);
    cfg.fill(cmd, "--tol", "tol", p.tol);
    cfg.fill(cmd, "--output", "output", p.output);
}

void check_common(const CommonParams& p, double sigma_max) {
    if (!(p.sigma >= 0.0 && p.sigma <= sigma_max))
        throw std::invalid_argument("sigma outside supported range [0, " + fmt_g(sigma_max) + "]");
    if (p.grid_n < 16 || p.grid_n % 2 != 0)
        throw std::invalid_argument("grid-n must be even and >= 16");
    if (p.grid_scale < 0.0)
        throw std::invalid_argument("grid-scale must be positive (or 0 for automatic)");
    if (!(p.tol > 0.0))
        throw std::invalid_argument("tol must be positive");
}

// Output sink: file when a path is set, stdout otherwise.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_csv_header(std::ostream& os, const json& run_config) {
    os << "# delta-spectra " << kVersion << "\n";
    os << "# config: " << run_config.dump() << "\n";
}

json common_config(const char* command, const CommonParams& p) {
    json j;
    j["command"] = command;
    j["sigma"] = p.sigma;
    j["grid_n"] = p.grid_n;
    j["grid_scale"] = p.grid_scale;
    j["tol"] = p.tol;
    j["output"] = p.output;
    return j;
}

// ---------------------------------------------------------------- energy

int cmd_energy(double kappa, std::optional<double> kappa_tilde, const CommonParams& p,
               const std::string& format) {
    check_common(p, 0.9);
    if (!(kappa > 0.0))
        throw std::invalid_argument("kappa must be positive");
    const double kt = kappa_tilde.value_or(kappa);
    if (!(kt > 0.0))
        throw std::invalid_argument("kappa-tilde must be positive");
    if (format != "json" && format != "csv")
        throw std::invalid_argument("format must be json or csv");

    json cfg = common_config("energy", p);
    cfg["kappa"] = kappa;
    cfg["kappa_tilde"] = kt;
    cfg["format"] = format;

    const CouplingTriple c = exciton_impurity(kappa, kt);
    const double bottom = bottom_essential(c, p.sigma);
    const auto state =
        ground_state_energy(c, p.sigma, {p.grid_n, p.grid_scale}, {.tol = p.tol});

    Sink sink(p.output);
    if (format == "json") {
        json rec;
        rec["version"] = kVersion;
        rec["config"] = cfg;
        rec["status"] = state ? "bound" : "none";
        rec["kappa"] = kappa;
        rec["kappa_tilde"] = kt;
        rec["sigma"] = p.sigma;
        rec["bottom_essential"] = bottom;
        if (state) {
            rec["energy"] = state->energy;
            rec["binding"] = bottom - state->energy;
            rec["residual"] = state->residual;
            rec["grid_n"] = state->n;
            rec["grid_scale"] = state->scale;
            rec["refined"] = state->refined;
            rec["converged"] = state->converged;
        }
        sink.out() << rec.dump(2) << "\n";
    } else {
        write_csv_header(sink.out(), cfg);
        sink.out() << "kappa,kappa_tilde,sigma,energy,bottom_essential,residual,status\n";
        sink.out() << fmt_g(kappa) << ',' << fmt_g(kt) << ',' << fmt_g(p.sigma) << ',';
        if (state)
            sink.out() << fmt_g(state->energy) << ',' << fmt_g(bottom) << ','
                       << fmt_g(state->residual) << ",ok\n";
        else
            sink.out() << ',' << fmt_g(bottom) << ",,none\n";
    }
    return state ? kOk : kNoBoundState;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(double kmin, double kmax, double kstep, const std::string& kappa_list,
              bool with_asymptote, const CommonParams& p) {
    check_common(p, 0.9);

    std::vector<double> kappas;
    if (!kappa_list.empty()) {
        std::stringstream ss(kappa_list);
        std::string tok;
        while (std::getline(ss, tok, ','))
            kappas.push_back(std::stod(tok));
    } else {
        if (!(kstep > 0.0) || !(kmin > 0.0) || kmax < kmin)
            throw std::invalid_argument("empty or invalid kappa range");
        for (double k = kmin; k <= kmax + 1e-12 * kstep; k += kstep)
            kappas.push_back(k);
    }
    if (kappas.empty())
        throw std::invalid_argument("empty kappa range");

    json cfg = common_config("sweep", p);
    cfg["kappa_min"] = kmin;
    cfg["kappa_max"] = kmax;
    cfg["kappa_step"] = kstep;
    if (!kappa_list.empty()) cfg["kappa_list"] = kappa_list;
    cfg["with_asymptote"] = with_asymptote;

    const SweepTable table = sweep_energy(kappas, p.sigma, {p.grid_n, p.grid_scale},
                                          with_asymptote, {.tol = p.tol});

    Sink sink(p.output);
    std::ostream& os = sink.out();
    write_csv_header(os, cfg);
    os << "kappa,energy,bottom_essential,asymptote,residual,status\n";
    int ok_rows = 0;
    for (const SweepRecord& r : table.records) {
        os << fmt_g(r.kappa) << ',';
        if (!r.error.empty()) {
            os << ",,," << ",error\n";
            continue;
        }
        if (r.state)
            os << fmt_g(r.state->energy);
        os << ',' << fmt_g(r.bottom) << ',';
        if (r.asymptote)
            os << fmt_g(*r.asymptote);
        os << ',';
        if (r.state)
            os << fmt_g(r.state->residual);
        os << ',' << (r.state ? "ok" : "none") << "\n";
        ++ok_rows;
    }
    return ok_rows > 0 ? kOk : kNumerical;
}

// ---------------------------------------------------------------- critical-charge

int cmd_critical_charge(std::optional<double> sigma_opt, const std::string& sigma_list,
                        double kappa_tol, const CommonParams& p) {
    check_common(p, 0.9);
    if (!(kappa_tol > 0.0))
        throw std::invalid_argument("tol must be positive");

    std::vector<double> sigmas;
    if (!sigma_list.empty()) {
        std::stringstream ss(sigma_list);
        std::string tok;
        while (std::getline(ss, tok, ','))
            sigmas.push_back(std::stod(tok));
    } else if (sigma_opt) {
        sigmas.push_back(*sigma_opt);
    } else {
        throw std::invalid_argument("need --sigma or --sigma-list");
    }
    for (double s : sigmas)
        if (!(s >= 0.0 && s <= 0.6))
            throw std::invalid_argument("sigma outside supported range [0, 0.6] for critical-charge");

    json cfg = common_config("critical-charge", p);
    cfg["kappa_tol"] = kappa_tol;
    cfg["sigma_values"] = sigmas;

    Sink sink(p.output);
    std::ostream& os = sink.out();
    write_csv_header(os, cfg);
    os << "sigma,kappa_c,bracket_lo,bracket_hi,margin\n";
    for (double s : sigmas) {
        const CriticalChargeResult r = critical_charge(s, kappa_tol, {p.grid_n, p.grid_scale});
        os << fmt_g(s) << ',' << fmt_g(r.kappa_c) << ',' << fmt_g(r.bracket_lo) << ','
           << fmt_g(r.bracket_hi) << ',' << fmt_g(r.margin) << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- beta

int cmd_beta(double smin, double smax, double sstep, const CommonParams& p) {
    const double domain_hi = 1.0 / std::sqrt(2.0);
    if (!(sstep > 0.0) || smin < 0.0 || smax < smin || smax >= domain_hi)
        throw std::invalid_argument("sigma grid must satisfy 0 <= min <= max < 1/sqrt(2), step > 0");

    json cfg;
    cfg["command"] = "beta";
    cfg["sigma_min"] = smin;
    cfg["sigma_max"] = smax;
    cfg["sigma_step"] = sstep;
    cfg["output"] = p.output;

    Sink sink(p.output);
    std::ostream& os = sink.out();
    write_csv_header(os, cfg);
    os << "sigma,beta\n";
    for (double s = smin; s <= smax + 1e-12 * sstep; s += sstep)
        os << fmt_g(s) << ',' << fmt_g(s == 0.0 ? beta_limit0() : beta(s)) << "\n";
    return kOk;
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(double kappa, std::optional<double> kappa_tilde, double spacing,
               double half_width, const CommonParams& p) {
    check_common(p, 0.9);
    if (kappa < 0.0)
        throw std::invalid_argument("kappa must be nonnegative (0 disables the impurity lines)");
    const double kt = kappa_tilde.value_or(kappa);

    json cfg = common_config("oracle", p);
    cfg["kappa"] = kappa;
    cfg["kappa_tilde"] = kt;
    cfg["spacing"] = spacing;
    cfg["box_half_width"] = half_width;

    const CouplingTriple c{-kappa, kt, -1.0};
    const OracleResult r = oracle_ground_state(c, p.sigma, {half_width, spacing});

    json rec;
    rec["version"] = kVersion;
    rec["config"] = cfg;
    rec["energy"] = r.energy;
    rec["iterations"] = r.iterations;
    rec["residual"] = r.residual;
    rec["boundary_amplitude"] = r.boundary_amplitude;
    rec["box_warning"] = r.box_warning;

    Sink sink(p.output);
    sink.out() << rec.dump(2) << "\n";
    return kOk;
}

// ---------------------------------------------------------------- validate

int cmd_validate(bool fast, const std::string& json_path) {
    ValidationReport report = run_validation(fast);

    std::printf("%-34s %-6s %s\n", "check", "status", "detail");
    std::printf("%-34s %-6s %s\n", "-----", "------", "------");
    for (const ValidationCheck& c : report.checks)
        std::printf("%-34s %-6s %s\n", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                    c.detail.c_str());
    std::printf("\n%d/%zu checks passed\n", report.passed_count(), report.checks.size());

    if (!json_path.empty()) {
        json j;
        j["version"] = kVersion;
        j["fast"] = fast;
        json arr = json::array();
        for (const ValidationCheck& c : report.checks)
            arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        j["checks"] = arr;
        j["all_passed"] = report.all_passed();
        std::ofstream out(json_path);
        out << j.dump(2) << "\n";
    }
    return report.all_passed() ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delta-spectra: bound states of a 1D exciton bound to a charged impurity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("delta-spectra ") + kVersion);

    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON config file (or set DELTA_SPECTRA_CONFIG); flags take precedence");

    // energy
    auto* energy = app.add_subcommand("energy", "ground state at a single coupling");
    double e_kappa = 0.0;
    std::optional<double> e_ktilde;
    std::string e_format = "json";
    CommonParams e_p;
    energy->add_option("--kappa", e_kappa, "impurity charge")->required();
    energy->add_option("--kappa-tilde", e_ktilde, "impurity-hole strength (default: kappa)");
    energy->add_option("--format", e_format, "json or csv");
    add_common(energy, e_p);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "ground state over a kappa grid, CSV output");
    double s_kmin = 0.0, s_kmax = 0.0, s_kstep = 0.0;
    std::string s_list;
    bool s_asym = false;
    CommonParams s_p;
    sweep->add_option("--kappa-min", s_kmin, "first kappa");
    sweep->add_option("--kappa-max", s_kmax, "last kappa");
    sweep->add_option("--kappa-step", s_kstep, "kappa increment");
    sweep->add_option("--kappa-list", s_list, "explicit comma-separated kappa values");
    sweep->add_flag("--with-asymptote", s_asym, "add the weak-coupling asymptote column");
    add_common(sweep, s_p);

    // critical-charge
    auto* crit = app.add_subcommand("critical-charge", "kappa_c per mass fraction, CSV output");
    std::optional<double> c_sigma;
    std::string c_slist;
    double c_tol = 5e-3;
    CommonParams c_p;
    crit->add_option("--sigma", c_sigma, "mass fraction");
    crit->add_option("--sigma-list", c_slist, "comma-separated mass fractions");
    crit->add_option("--tol", c_tol, "kappa bracket width");
    crit->add_option("--grid-n", c_p.grid_n, "quadrature node count");
    crit->add_option("--grid-scale", c_p.grid_scale, "tan-map scale; 0 automatic");
    crit->add_option("-o,--output", c_p.output, "output path");

    // beta
    auto* betac = app.add_subcommand("beta", "weak-coupling coefficient over a sigma grid, CSV");
    double b_min = 0.0, b_max = 0.65, b_step = 0.05;
    CommonParams b_p;
    betac->add_option("--sigma-min", b_min, "first sigma (0 uses the closed-form limit)");
    betac->add_option("--sigma-max", b_max, "last sigma, below 1/sqrt(2)");
    betac->add_option("--sigma-step", b_step, "sigma increment");
    betac->add_option("-o,--output", b_p.output, "output path");

    // validate
    auto* val = app.add_subcommand("validate", "run the numerical invariant suite");
    bool v_fast = false;
    std::string v_json;
    val->add_flag("--fast", v_fast, "reduced grids, completes in under a minute");
    val->add_option("--json", v_json, "also write a machine-readable report");

    // oracle
    auto* orac = app.add_subcommand("oracle", "finite-difference cross-check on a box");
    double o_kappa = 0.5, o_spacing = 0.1, o_box = 20.0;
    std::optional<double> o_ktilde;
    CommonParams o_p;
    orac->add_option("--kappa", o_kappa, "impurity charge (0 disables the impurity lines)");
    orac->add_option("--kappa-tilde", o_ktilde, "impurity-hole strength (default: kappa)");
    orac->add_option("--spacing", o_spacing, "grid spacing h");
    orac->add_option("--box-half-width", o_box, "half width of the Dirichlet box");
    orac->add_option("--sigma", o_p.sigma, "mass fraction");
    orac->add_option("-o,--output", o_p.output, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        ConfigFile cfg;
        if (config_path.empty()) {
            if (const char* env = std::getenv("DELTA_SPECTRA_CONFIG"))
                config_path = env;
        }
        if (!config_path.empty())
            cfg.load(config_path);

        if (energy->parsed()) {
            cfg.fill(energy, "--kappa", "kappa", e_kappa);
            if (energy->count("--kappa-tilde") == 0 && cfg.data.contains("kappa_tilde"))
                e_ktilde = cfg.data.at("kappa_tilde").get<double>();
            cfg.fill(energy, "--format", "format", e_format);
            resolve_common(energy, cfg, e_p);
            return cmd_energy(e_kappa, e_ktilde, e_p, e_format);
        }
        if (sweep->parsed()) {
            cfg.fill(sweep, "--kappa-min", "kappa_min", s_kmin);
            cfg.fill(sweep, "--kappa-max", "kappa_max", s_kmax);
            cfg.fill(sweep, "--kappa-step", "kappa_step", s_kstep);
            cfg.fill(sweep, "--kappa-list", "kappa_list", s_list);
            resolve_common(sweep, cfg, s_p);
            return cmd_sweep(s_kmin, s_kmax, s_kstep, s_list, s_asym, s_p);
        }
        if (crit->parsed()) {
            if (crit->count("--sigma") == 0 && cfg.data.contains("sigma"))
                c_sigma = cfg.data.at("sigma").get<double>();
            cfg.fill(crit, "--tol", "kappa_tol", c_tol);
            cfg.fill(crit, "--grid-n", "grid_n", c_p.grid_n);
            cfg.fill(crit, "--output", "output", c_p.output);
            return cmd_critical_charge(c_sigma, c_slist, c_tol, c_p);
        }
        if (betac->parsed()) {
            cfg.fill(betac, "--sigma-min", "sigma_min", b_min);
            cfg.fill(betac, "--sigma-max", "sigma_max", b_max);
            cfg.fill(betac, "--sigma-step", "sigma_step", b_step);
            cfg.fill(betac, "--output", "output", b_p.output);
            return cmd_beta(b_min, b_max, b_step, b_p);
        }
        if (val->parsed())
            return cmd_validate(v_fast, v_json);
        if (orac->parsed()) {
            cfg.fill(orac, "--kappa", "kappa", o_kappa);
            cfg.fill(orac, "--spacing", "spacing", o_spacing);
            cfg.fill(orac, "--box-half-width", "box_half_width", o_box);
            cfg.fill(orac, "--sigma", "sigma", o_p.sigma);
            cfg.fill(orac, "--output", "output", o_p.output);
            return cmd_oracle(o_kappa, o_ktilde, o_spacing, o_box, o_p);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}
