// Command-line front end: spectrum reconstruction, eigenstate diagnostics,
// spectral classification, recurrence checks, parameter sweeps, trapping-state
// simulations, and even-qubit generalization checks.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/classify.hpp"
#include "dicke/csv.hpp"
#include "dicke/dynamics.hpp"
#include "dicke/eigensolver.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/hamiltonian.hpp"
#include "dicke/recurrence.hpp"
#include "dicke/sweep.hpp"
#include "dicke/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace dicke;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct ModelFlags {
    double omega = 1.0;
    double omega0 = 1.0;
    double g = 1.1;
    std::string model = "dicke";
    std::string dipole = "0,0,0";
    double drive_x = 0.0;
    double drive_y = 0.0;
};

struct ConvergeFlags {
    std::string parity = "positive";
    int n_states = 400;
    double tol_lambda = 1e-10;
    double tol_vector = 1e-10;
    int s_start = 0;
    int s_step = 0;
    int s_max = 12000;
};

std::vector<double> parse_csv_doubles(const std::string& text, std::size_t expect,
                                      const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError(std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (expect != 0 && out.size() != expect) {
        throw CLI::ValidationError(std::string(what) + ": expected " +
                                   std::to_string(expect) + " comma-separated values");
    }
    return out;
}

ModelParams to_params(const ModelFlags& f) {
    ModelParams p;
    p.omega = f.omega;
    p.omega0 = f.omega0;
    p.g = f.g;
    p.drive_x = f.drive_x;
    p.drive_y = f.drive_y;
    const auto d = parse_csv_doubles(f.dipole, 3, "--dipole");
    p.dipole = {d[0], d[1], d[2]};
    if (f.model == "dicke") {
        p.model = Model::dicke;
    } else if (f.model == "variant") {
        p.model = Model::variant;
    } else {
        throw CLI::ValidationError("--model must be dicke or variant");
    }
    p.validate();
    return p;
}

Parity to_parity(const std::string& s) {
    if (s == "positive") return Parity::positive;
    if (s == "negative") return Parity::negative;
    throw CLI::ValidationError("--parity must be positive or negative");
}

// "nu,kappa,trunc;nu,kappa,trunc;..."
std::vector<BathMode> parse_modes(const std::string& text) {
    std::vector<BathMode> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string triple;
    while (std::getline(ss, triple, ';')) {
        const auto v = parse_csv_doubles(triple, 3, "bath mode");
        out.push_back({v[0], v[1], static_cast<int>(std::lround(v[2]))});
    }
    return out;
}

void add_model_options(CLI::App* cmd, ModelFlags& f, bool with_driving) {
    cmd->add_option("--omega", f.omega, "Field frequency (energy unit)");
    cmd->add_option("--omega0", f.omega0, "Qubit transition frequency");
    cmd->add_option("--g", f.g, "Qubit-field coupling");
    cmd->add_option("--model", f.model, "dicke or variant")
        ->check(CLI::IsMember({"dicke", "variant"}));
    cmd->add_option("--dipole", f.dipole, "Dipole-dipole strengths x,y,z");
    if (with_driving) {
        cmd->add_option("--drive-x", f.drive_x, "Omega_x Sx driving amplitude");
        cmd->add_option("--drive-y", f.drive_y, "Omega_y Sy driving amplitude");
    }
}

void add_converge_options(CLI::App* cmd, ConvergeFlags& f) {
    cmd->add_option("--parity", f.parity, "positive or negative")
        ->check(CLI::IsMember({"positive", "negative"}));
    cmd->add_option("--n-states", f.n_states, "Number of states to converge");
    cmd->add_option("--tol-lambda", f.tol_lambda, "Eigenvalue convergence tolerance");
    cmd->add_option("--tol-vector", f.tol_vector, "Eigenvector convergence tolerance");
    cmd->add_option("--s-start", f.s_start, "Initial subspace size (0: 4*n_states)");
    cmd->add_option("--s-step", f.s_step, "Subspace growth step (0: auto)");
    cmd->add_option("--s-max", f.s_max, "Subspace size cap");
}

ConvergeOptions to_converge_options(const ConvergeFlags& f) {
    ConvergeOptions o;
    o.tol_lambda = f.tol_lambda;
    o.tol_vector = f.tol_vector;
    o.s_start = f.s_start;
    o.s_step = f.s_step;
    o.s_max = f.s_max;
    return o;
}

class RunManifest {
  public:
    RunManifest(const fs::path& outdir, const std::string& subcommand,
                const std::vector<std::string>& argv, bool allow_existing = false)
        : path_(outdir / "manifest.json") {
        if (!allow_existing && fs::exists(path_)) {
            throw CLI::ValidationError(
                "output directory already holds a run (manifest.json exists); "
                "refusing to overwrite " + path_.string());
        }
        fs::create_directories(outdir);
        doc_["tool"] = "dicke " + subcommand;
        doc_["version"] = kVersion;
        doc_["argv"] = argv;
        doc_["complete"] = false;
        flush();  // manifest lands before any result file
    }

    ordered_json& doc() { return doc_; }

    void flush() {
        std::ofstream out(path_, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path_.string());
        out << doc_.dump(2) << "\n";
    }

    void fail(const std::string& error) {
        doc_["error"] = error;
        flush();
    }

    void complete() {
        doc_["complete"] = true;
        flush();
    }

  private:
    fs::path path_;
    ordered_json doc_;
};

ordered_json params_json(const ModelParams& p) {
    return ordered_json{{"omega", p.omega},     {"omega0", p.omega0},
                        {"g", p.g},             {"model", to_string(p.model)},
                        {"drive_x", p.drive_x}, {"drive_y", p.drive_y},
                        {"dipole", p.dipole}};
}

struct ConvergedRun {
    ConvergedSpectrum conv;
    std::vector<StateDiagnostics> diags;
};

ConvergedRun converge_and_diagnose(const ModelParams& params, Parity parity,
                                   const ConvergeFlags& flags) {
    ConvergedRun run;
    run.conv = converge(params, parity, flags.n_states, to_converge_options(flags));
    const ParityBasis basis = run.conv.basis();
    run.diags = compute_diagnostics(run.conv.spectrum, basis, run.conv.n_converged);
    return run;
}

void write_plot_data(const fs::path& outdir, const std::vector<StateDiagnostics>& diags) {
    CsvWriter conc(outdir / "plot_concurrence.csv");
    conc.write_row({"eigenvalue", "concurrence", "class_id"});
    CsvWriter mi(outdir / "plot_mutual_information.csv");
    mi.write_row({"eigenvalue", "mutual_information", "class_id"});
    for (const auto& d : diags) {
        conc.write_row({csv_number(d.eigenvalue), csv_number(d.concurrence),
                        std::to_string(d.index % 4)});
        mi.write_row({csv_number(d.eigenvalue), csv_number(d.mutual_information),
                      std::to_string(d.index % 4)});
    }
    conc.close();
    mi.close();
}

double mandel_positive_fraction(const std::vector<StateDiagnostics>& diags) {
    int defined = 0, positive = 0;
    for (const auto& d : diags) {
        if (d.mandel_q) {
            ++defined;
            if (*d.mandel_q > 0.0) ++positive;
        }
    }
    return defined > 0 ? static_cast<double>(positive) / defined : 0.0;
}

int run_spectrum(const ModelFlags& mf, const ConvergeFlags& cf, const fs::path& outdir,
                 bool emit_plot_data, const std::vector<std::string>& argv) {
    const ModelParams params = to_params(mf);
    RunManifest manifest(outdir, "spectrum", argv);
    manifest.doc()["params"] = params_json(params);
    manifest.flush();
    try {
        const ConvergedRun run = converge_and_diagnose(params, to_parity(cf.parity), cf);
        write_spectrum_csv(outdir / "spectrum.csv", run.conv);
        if (emit_plot_data) {
            write_diagnostics_csv(outdir / "diagnostics.csv", run.diags);
            write_plot_data(outdir, run.diags);
        }
        manifest.doc()["converged"] = run.conv.converged;
        manifest.doc()["final_size"] = run.conv.final_size;
        manifest.doc()["n_converged"] = run.conv.n_converged;
        manifest.complete();
        std::cout << "spectrum: " << run.conv.n_converged << "/" << cf.n_states
                  << " states converged at S=" << run.conv.final_size << "\n";
        return run.conv.converged ? kExitOk : kExitNumerical;
    } catch (const std::exception& e) {
        manifest.fail(e.what());
        throw;
    }
}

int run_entangle(const ModelFlags& mf, const ConvergeFlags& cf, const fs::path& outdir,
                 bool emit_plot_data, const std::vector<std::string>& argv) {
    const ModelParams params = to_params(mf);
    RunManifest manifest(outdir, "entangle", argv);
    manifest.doc()["params"] = params_json(params);
    manifest.flush();
    try {
        const ConvergedRun run = converge_and_diagnose(params, to_parity(cf.parity), cf);
        write_spectrum_csv(outdir / "spectrum.csv", run.conv);
        write_diagnostics_csv(outdir / "diagnostics.csv", run.diags);
        if (emit_plot_data) write_plot_data(outdir, run.diags);
        const double frac = mandel_positive_fraction(run.diags);
        manifest.doc()["converged"] = run.conv.converged;
        manifest.doc()["final_size"] = run.conv.final_size;
        manifest.doc()["n_converged"] = run.conv.n_converged;
        manifest.doc()["mandel_q_positive_fraction"] = frac;
        manifest.complete();
        std::cout << "entangle: " << run.conv.n_converged << " states; fraction with "
                  << "Mandel Q > 0: " << frac << "\n";
        return run.conv.converged ? kExitOk : kExitNumerical;
    } catch (const std::exception& e) {
        manifest.fail(e.what());
        throw;
    }
}

int run_classify(const ModelFlags& mf, const ConvergeFlags& cf, const fs::path& outdir,
                 const std::vector<std::string>& argv) {
    const ModelParams params = to_params(mf);
    RunManifest manifest(outdir, "classify", argv);
    manifest.doc()["params"] = params_json(params);
    manifest.flush();
    try {
        const ConvergedRun run = converge_and_diagnose(params, to_parity(cf.parity), cf);
        const SpectralClassReport report = classify_spectrum(run.conv, run.diags, params);
        write_spectrum_csv(outdir / "spectrum.csv", run.conv);
        write_diagnostics_csv(outdir / "diagnostics.csv", run.diags);
        write_classes_csv(outdir / "classes.csv", report, run.diags);

        CsvWriter summary(outdir / "class_summary.csv");
        summary.write_row({"class_id", "mean_spacing", "std_spacing", "n_spacings"});
        for (std::size_t r = 0; r < 4; ++r) {
            summary.write_row({std::to_string(r), csv_number(report.class_stats[r].mean),
                               csv_number(report.class_stats[r].stddev),
                               std::to_string(report.class_stats[r].n_spacings)});
        }
        summary.write_row({"singlet", csv_number(report.singlet_stats.mean),
                           csv_number(report.singlet_stats.stddev),
                           std::to_string(report.singlet_stats.n_spacings)});
        summary.close();

        manifest.doc()["converged"] = run.conv.converged;
        manifest.doc()["final_size"] = run.conv.final_size;
        manifest.doc()["singlet_class_id"] = report.singlet_class_id;
        manifest.doc()["interleaving_broken"] = report.interleaving_broken;
        manifest.doc()["singlet_mean_spacing"] = report.singlet_stats.mean;
        manifest.complete();

        std::cout << "classify: singlet class "
                  << (report.singlet_class_id >= 0
                          ? std::to_string(report.singlet_class_id)
                          : std::string("not interleaved"))
                  << ", singlet mean spacing " << report.singlet_stats.mean << "\n";
        for (std::size_t r = 0; r < 4; ++r) {
            std::cout << "  class " << r << ": mean " << report.class_stats[r].mean
                      << " +/- " << report.class_stats[r].stddev << "\n";
        }
        return run.conv.converged ? kExitOk : kExitNumerical;
    } catch (const std::exception& e) {
        manifest.fail(e.what());
        throw;
    }
}

int run_recurrence_check(const ModelFlags& mf, const ConvergeFlags& cf,
                         const fs::path& outdir, double residual_tol,
                         double min_pass_fraction, int recon_samples,
                         const std::vector<std::string>& argv) {
    const ModelParams params = to_params(mf);
    RunManifest manifest(outdir, "recurrence-check", argv);
    manifest.doc()["params"] = params_json(params);
    manifest.flush();
    try {
        const Parity parity = to_parity(cf.parity);
        const ConvergedRun run = converge_and_diagnose(params, parity, cf);
        const ParityBasis basis = run.conv.basis();

        CsvWriter csv(outdir / "recurrence.csv");
        csv.write_row({"index", "eigenvalue", "residual", "pole_flag"});
        int checked = 0, passed = 0;
        std::vector<int> triplet_ok;
        for (int n = 0; n < run.conv.n_converged; ++n) {
            const Eigen::VectorXd v = run.conv.spectrum.eigenvectors.col(n);
            const double lambda = run.conv.spectrum.eigenvalues(n);
            const ResidualReport rr = recurrence_residual(v, lambda, parity, params, basis);
            std::string flag;
            switch (rr.status) {
                case RecurrenceStatus::ok: flag = "0"; break;
                case RecurrenceStatus::singlet_input: flag = "singlet"; break;
                case RecurrenceStatus::pole_proximate: flag = "pole"; break;
                case RecurrenceStatus::coupling_off: flag = "g0"; break;
            }
            csv.write_row({std::to_string(n), csv_number(lambda),
                           csv_number(rr.status == RecurrenceStatus::singlet_input
                                          ? std::optional<double>{}
                                          : std::optional<double>{rr.residual}),
                           flag});
            if (rr.status == RecurrenceStatus::ok) {
                ++checked;
                if (rr.residual <= residual_tol) {
                    ++passed;
                    triplet_ok.push_back(n);
                }
            }
        }
        csv.close();

        // f1 reconstruction self-consistency on a sample of clean states.
        int recon_checked = 0, recon_passed = 0;
        const int stride = std::max<int>(1, static_cast<int>(triplet_ok.size()) /
                                                std::max(1, recon_samples));
        for (std::size_t i = 0; i < triplet_ok.size() && recon_checked < recon_samples;
             i += static_cast<std::size_t>(stride)) {
            const int n = triplet_ok[i];
            const Eigen::VectorXd v = run.conv.spectrum.eigenvectors.col(n);
            const Eigen::VectorXd f1 = extract_f1(v, basis);
            const Eigen::VectorXd rec = reconstruct_from_f1(
                f1, run.conv.spectrum.eigenvalues(n), params, basis);
            ++recon_checked;
            if (std::abs(rec.dot(v)) >= 1.0 - 1e-8) ++recon_passed;
        }

        const double fraction = checked > 0 ? static_cast<double>(passed) / checked : 1.0;
        manifest.doc()["converged"] = run.conv.converged;
        manifest.doc()["n_checked"] = checked;
        manifest.doc()["pass_fraction"] = fraction;
        manifest.doc()["reconstruction_checked"] = recon_checked;
        manifest.doc()["reconstruction_passed"] = recon_passed;
        manifest.complete();

        std::cout << "recurrence-check: " << passed << "/" << checked
                  << " triplet states below residual " << residual_tol
                  << "; reconstruction " << recon_passed << "/" << recon_checked << "\n";
        const bool ok = run.conv.converged && fraction >= min_pass_fraction &&
                        recon_passed == recon_checked;
        return ok ? kExitOk : kExitNumerical;
    } catch (const std::exception& e) {
        manifest.fail(e.what());
        throw;
    }
}

int run_sweep_cmd(const SweepConfig& config, const fs::path& outdir) {
    const SweepResult result = run_sweep(config, outdir);
    std::cout << format_table1(result.aggregate, config.mode);
    int not_converged = 0;
    for (const auto& s : result.samples) {
        if (s.completed && !s.converged) ++not_converged;
    }
    if (result.n_failed > 0 || not_converged > 0) {
        std::cerr << "sweep: " << result.n_failed << " failed, " << not_converged
                  << " not converged\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int run_trap_sim(const ModelFlags& mf, const std::string& env_qubit,
                 const std::string& env_field, int photon, int fock, double t_max,
                 int n_times, double field_alpha,
                 std::optional<double> require_fidelity, const fs::path& outdir,
                 const std::vector<std::string>& argv) {
    const ModelParams params = to_params(mf);
    EnvironmentParams env;
    env.qubit_modes = parse_modes(env_qubit);
    env.field_modes = parse_modes(env_field);
    env.validate();

    RunManifest manifest(outdir, "trap-sim", argv);
    manifest.doc()["params"] = params_json(params);
    manifest.flush();
    try {
        TrappingState trap;
        trap.photon = photon;
        trap.kind = params.model == Model::dicke ? TrapKind::singlet_pairs
                                                 : TrapKind::phi_minus_pairs;
        trap.field_alpha = field_alpha;

        std::vector<double> times;
        times.reserve(static_cast<std::size_t>(n_times));
        for (int i = 0; i < n_times; ++i) {
            times.push_back(t_max * i / std::max(1, n_times - 1));
        }
        const auto trace = trapping_fidelity(params, env, trap, times, fock);

        CsvWriter csv(outdir / "fidelity.csv");
        csv.write_row({"t", "qubit_fidelity", "field_mean_n", "qubit_purity"});
        double min_fidelity = 1.0;
        for (const auto& p : trace) {
            csv.write_row({csv_number(p.t), csv_number(p.qubit_fidelity),
                           csv_number(p.field_mean_n), csv_number(p.qubit_purity)});
            min_fidelity = std::min(min_fidelity, p.qubit_fidelity);
        }
        csv.close();

        manifest.doc()["min_qubit_fidelity"] = min_fidelity;
        manifest.complete();
        std::cout << "trap-sim: min qubit fidelity " << csv_number(min_fidelity) << "\n";
        if (require_fidelity && min_fidelity < *require_fidelity) return kExitNumerical;
        return kExitOk;
    } catch (const std::exception& e) {
        manifest.fail(e.what());
        throw;
    }
}

int run_multiqubit_check(const ModelFlags& mf, int n_qubits, const std::string& matching_s,
                         int photon, int fock, const fs::path& outdir,
                         const std::vector<std::string>& argv) {
    const ModelParams params = to_params(mf);
    Matching matching;
    if (!matching_s.empty()) {
        std::stringstream ss(matching_s);
        std::string pair;
        while (std::getline(ss, pair, ';')) {
            const auto v = parse_csv_doubles(pair, 2, "--matching");
            matching.emplace_back(static_cast<int>(v[0]), static_cast<int>(v[1]));
        }
    }
    RunManifest manifest(outdir, "multiqubit-check", argv);
    manifest.doc()["params"] = params_json(params);
    manifest.doc()["n_qubits"] = n_qubits;
    manifest.flush();
    try {
        const auto report = verify_multiqubit_traps(n_qubits, params, matching, photon, fock);
        manifest.doc()["eigenvalue"] = report.eigenvalue;
        manifest.doc()["eigen_residual"] = report.eigen_residual;
        manifest.doc()["spin_norms"] = report.spin_norms;
        manifest.complete();
        std::cout << "multiqubit-check: eigenvalue " << report.eigenvalue << ", residual "
                  << csv_number(report.eigen_residual) << ", |S v| = ["
                  << csv_number(report.spin_norms[0]) << ", "
                  << csv_number(report.spin_norms[1]) << ", "
                  << csv_number(report.spin_norms[2]) << "]\n";
        const bool spins_ok = params.model == Model::dicke
                                  ? (report.spin_norms[0] <= 1e-12 &&
                                     report.spin_norms[1] <= 1e-12 &&
                                     report.spin_norms[2] <= 1e-12)
                                  : report.spin_norms[0] <= 1e-12;
        return (report.eigen_residual <= 1e-10 && spins_ok) ? kExitOk : kExitNumerical;
    } catch (const std::exception& e) {
        manifest.fail(e.what());
        throw;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> argv_echo(argv, argv + argc);

    CLI::App app{"Two-qubit Dicke model: spectra, entanglement classes, trapping states"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "Converged spectrum at one parameter point");
    ModelFlags sp_model;
    ConvergeFlags sp_conv;
    std::string sp_outdir;
    bool sp_plot = false;
    add_model_options(sp, sp_model, false);
    add_converge_options(sp, sp_conv);
    sp->add_option("--outdir", sp_outdir, "Output directory")->required();
    sp->add_flag("--emit-plot-data", sp_plot, "Also write per-state measures");

    // entangle
    auto* en = app.add_subcommand("entangle", "Per-eigenstate entanglement diagnostics");
    ModelFlags en_model;
    ConvergeFlags en_conv;
    std::string en_outdir;
    bool en_plot = false;
    add_model_options(en, en_model, false);
    add_converge_options(en, en_conv);
    en->add_option("--outdir", en_outdir, "Output directory")->required();
    en->add_flag("--emit-plot-data", en_plot, "Also write plot-ready columns");

    // classify
    auto* cl = app.add_subcommand("classify", "Partition the spectrum into spacing classes");
    ModelFlags cl_model;
    ConvergeFlags cl_conv;
    std::string cl_outdir;
    add_model_options(cl, cl_model, false);
    add_converge_options(cl, cl_conv);
    cl->add_option("--outdir", cl_outdir, "Output directory")->required();

    // recurrence-check
    auto* rc = app.add_subcommand("recurrence-check",
                                  "Verify eigenvectors against the three-term recurrence");
    ModelFlags rc_model;
    ConvergeFlags rc_conv;
    std::string rc_outdir;
    double rc_tol = 1e-8, rc_min_pass = 0.95;
    int rc_samples = 100;
    add_model_options(rc, rc_model, false);
    add_converge_options(rc, rc_conv);
    rc->add_option("--outdir", rc_outdir, "Output directory")->required();
    rc->add_option("--residual-tol", rc_tol, "Normalized residual threshold");
    rc->add_option("--min-pass-fraction", rc_min_pass, "Required pass fraction");
    rc->add_option("--recon-samples", rc_samples, "Reconstruction sample count");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Parameter-ensemble statistics");
    SweepConfig sw_config;
    std::string sw_mode = "grid", sw_parity = "positive", sw_model = "dicke", sw_outdir;
    sw->add_option("--samples", sw_config.n_samples, "Number of parameter samples");
    sw->add_option("--mode", sw_mode, "grid (on resonance) or random (detuned)")
        ->check(CLI::IsMember({"grid", "random"}));
    sw->add_option("--seed", sw_config.rng_seed, "RNG seed for random mode");
    sw->add_option("--omega", sw_config.omega, "Field frequency");
    sw->add_option("--g-min", sw_config.g_min, "Lower coupling bound (units of omega)");
    sw->add_option("--g-max", sw_config.g_max, "Upper coupling bound");
    sw->add_option("--omega0-min", sw_config.omega0_min, "Lower detuning bound");
    sw->add_option("--omega0-max", sw_config.omega0_max, "Upper detuning bound");
    sw->add_option("--n-states", sw_config.n_states, "Converged states per sample");
    sw->add_option("--tol-lambda", sw_config.tol_lambda, "Eigenvalue tolerance");
    sw->add_option("--tol-vector", sw_config.tol_vector, "Eigenvector tolerance");
    sw->add_option("--s-max", sw_config.s_max, "Subspace size cap");
    sw->add_option("--parity", sw_parity)->check(CLI::IsMember({"positive", "negative"}));
    sw->add_option("--model", sw_model)->check(CLI::IsMember({"dicke", "variant"}));
    sw->add_option("--workers", sw_config.workers, "Worker threads (0: auto)");
    sw->add_option("--outdir", sw_outdir, "Output directory")->required();

    // trap-sim
    auto* ts = app.add_subcommand("trap-sim", "Composite trapping-state evolution");
    ModelFlags ts_model;
    std::string ts_env_qubit = "1,1,4", ts_env_field = "1,1,4", ts_outdir;
    int ts_photon = 2, ts_fock = 8, ts_ntimes = 101;
    double ts_tmax = 50.0, ts_alpha = 0.0;
    double ts_require = -1.0;
    add_model_options(ts, ts_model, true);
    ts->add_option("--env-qubit-modes", ts_env_qubit,
                   "Qubit-bath modes 'nu,kappa,trunc;...' (empty for none)");
    ts->add_option("--env-field-modes", ts_env_field,
                   "Field-bath modes 'mu,chi,trunc;...' (empty for none)");
    ts->add_option("--photon", ts_photon, "System Fock number of the trap");
    ts->add_option("--fock", ts_fock, "System field truncation");
    ts->add_option("--t-max", ts_tmax, "Final time (units of 1/omega)");
    ts->add_option("--n-times", ts_ntimes, "Number of output times");
    ts->add_option("--field-alpha", ts_alpha, "Coherent displacement of the field");
    ts->add_option("--require-fidelity", ts_require,
                   "Exit nonzero when min fidelity drops below this");
    ts->add_option("--outdir", ts_outdir, "Output directory")->required();

    // multiqubit-check
    auto* mq = app.add_subcommand("multiqubit-check",
                                  "Trap verification for even qubit ensembles");
    ModelFlags mq_model;
    std::string mq_matching, mq_outdir;
    int mq_nq = 4, mq_photon = 1, mq_fock = 4;
    add_model_options(mq, mq_model, false);
    mq->add_option("--n-qubits", mq_nq, "Even qubit count (2..6)");
    mq->add_option("--matching", mq_matching, "Pairing '0,1;2,3' (default consecutive)");
    mq->add_option("--photon", mq_photon, "Fock number of the trap");
    mq->add_option("--fock", mq_fock, "Field truncation");
    mq->add_option("--outdir", mq_outdir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sp->parsed()) {
            return run_spectrum(sp_model, sp_conv, sp_outdir, sp_plot, argv_echo);
        }
        if (en->parsed()) {
            return run_entangle(en_model, en_conv, en_outdir, en_plot, argv_echo);
        }
        if (cl->parsed()) {
            return run_classify(cl_model, cl_conv, cl_outdir, argv_echo);
        }
        if (rc->parsed()) {
            return run_recurrence_check(rc_model, rc_conv, rc_outdir, rc_tol, rc_min_pass,
                                        rc_samples, argv_echo);
        }
        if (sw->parsed()) {
            sw_config.mode = sw_mode == "grid" ? SweepMode::on_resonance_grid
                                               : SweepMode::off_resonance_random;
            sw_config.parity = to_parity(sw_parity);
            sw_config.model = sw_model == "dicke" ? Model::dicke : Model::variant;
            return run_sweep_cmd(sw_config, sw_outdir);
        }
        if (ts->parsed()) {
            return run_trap_sim(ts_model, ts_env_qubit, ts_env_field, ts_photon, ts_fock,
                                ts_tmax, ts_ntimes, ts_alpha,
                                ts_require >= 0.0 ? std::optional<double>(ts_require)
                                                  : std::nullopt,
                                ts_outdir, argv_echo);
        }
        if (mq->parsed()) {
            return run_multiqubit_check(mq_model, mq_nq, mq_matching, mq_photon, mq_fock,
                                        mq_outdir, argv_echo);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
