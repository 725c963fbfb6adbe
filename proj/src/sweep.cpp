#include "dicke/sweep.hpp"

#include <dlfcn.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "dicke/csv.hpp"
#include "dicke/version.hpp"

namespace dicke {

namespace {

using nlohmann::ordered_json;

// Stateless counter-based stream (splitmix64 finalizer): draw d of sample k
// depends on (seed, k, d) only, so workers share nothing.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = mix64(seed + 0x9E3779B97F4A7C15ull * (counter + 1));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ordered_json config_json(const SweepConfig& c) {
    return ordered_json{{"mode", to_string(c.mode)},
                        {"n_samples", c.n_samples},
                        {"omega", c.omega},
                        {"g_min", c.g_min},
                        {"g_max", c.g_max},
                        {"omega0_min", c.omega0_min},
                        {"omega0_max", c.omega0_max},
                        {"n_states", c.n_states},
                        {"tol_lambda", c.tol_lambda},
                        {"tol_vector", c.tol_vector},
                        {"s_max", c.s_max},
                        {"rng_seed", c.rng_seed},
                        {"parity", to_string(c.parity)},
                        {"model", to_string(c.model)}};
}

ordered_json stats_json(const ClassStats& s) {
    return ordered_json{{"mean", s.mean}, {"std", s.stddev}, {"n_spacings", s.n_spacings}};
}

ClassStats stats_from_json(const nlohmann::json& j) {
    ClassStats s;
    s.mean = j.at("mean").get<double>();
    s.stddev = j.at("std").get<double>();
    s.n_spacings = j.at("n_spacings").get<int>();
    return s;
}

void write_json_file(const std::filesystem::path& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace

void SweepConfig::validate() const {
    if (n_samples < 1) throw std::invalid_argument("sweep: n_samples must be >= 1");
    if (n_states < 1) throw std::invalid_argument("sweep: n_states must be >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("sweep: omega must be > 0");
    if (!(g_min <= g_max) || !(omega0_min <= omega0_max)) {
        throw std::invalid_argument("sweep: parameter ranges must be ordered");
    }
    if (!(tol_lambda > 0.0) || !(tol_vector > 0.0)) {
        throw std::invalid_argument("sweep: tolerances must be > 0");
    }
}

std::vector<ModelParams> sample_parameters(const SweepConfig& config) {
    config.validate();
    std::vector<ModelParams> out;
    out.reserve(static_cast<std::size_t>(config.n_samples));
    for (int k = 0; k < config.n_samples; ++k) {
        ModelParams p;
        p.omega = config.omega;
        p.model = config.model;
        if (config.mode == SweepMode::on_resonance_grid) {
            const double t = config.n_samples == 1
                                 ? 0.0
                                 : static_cast<double>(k) / (config.n_samples - 1);
            p.g = (config.g_min + t * (config.g_max - config.g_min)) * config.omega;
            p.omega0 = config.omega;
        } else {
            const std::uint64_t base = static_cast<std::uint64_t>(k) * 8;
            const double ug = uniform01(config.rng_seed, base);
            const double uw = uniform01(config.rng_seed, base + 1);
            p.g = (config.g_min + ug * (config.g_max - config.g_min)) * config.omega;
            p.omega0 =
                (config.omega0_min + uw * (config.omega0_max - config.omega0_min)) *
                config.omega;
        }
        out.push_back(p);
    }
    return out;
}

void blas_single_thread() {
    using Fn = void (*)(int);
    if (auto f = reinterpret_cast<Fn>(dlsym(RTLD_DEFAULT, "openblas_set_num_threads"))) {
        f(1);
    }
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const ConvergedSpectrum& converged) {
    CsvWriter csv(path);
    csv.write_row({"index", "eigenvalue", "delta_lambda", "delta_vector"});
    for (int n = 0; n < converged.n_requested && n < converged.spectrum.dim(); ++n) {
        csv.write_row({std::to_string(n), csv_number(converged.spectrum.eigenvalues(n)),
                       csv_number(converged.delta_lambda[static_cast<std::size_t>(n)]),
                       csv_number(converged.delta_vector[static_cast<std::size_t>(n)])});
    }
    csv.close();
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<StateDiagnostics>& rows) {
    CsvWriter csv(path);
    csv.write_row({"index", "eigenvalue", "concurrence", "mutual_information",
                   "mandel_q", "Sz_expectation", "singlet_weight"});
    for (const auto& d : rows) {
        csv.write_row({std::to_string(d.index), csv_number(d.eigenvalue),
                       csv_number(d.concurrence), csv_number(d.mutual_information),
                       csv_number(d.mandel_q), csv_number(d.sz),
                       csv_number(d.singlet_weight)});
    }
    csv.close();
}

void write_classes_csv(const std::filesystem::path& path,
                       const SpectralClassReport& report,
                       const std::vector<StateDiagnostics>& rows) {
    CsvWriter csv(path);
    csv.write_row({"eigenvalue", "concurrence", "mutual_information", "class_id"});
    for (int i = 0; i < report.n_converged; ++i) {
        const auto& d = rows[static_cast<std::size_t>(i)];
        csv.write_row({csv_number(d.eigenvalue), csv_number(d.concurrence),
                       csv_number(d.mutual_information), std::to_string(i % 4)});
    }
    csv.close();
}

const std::vector<FullScaleReference>& full_scale_reference() {
    // Full-scale ensemble values (5000 samples, 2000 states each); our class r
    // collects 0-based indices 4n + r, i.e. 1-based levels 4n + (r+1).
    static const std::vector<FullScaleReference> ref = {
        {"class 0", 2.00723, 7.22187e-3, 2.00719, 7.16537e-3},
        {"class 1", 2.00646, 6.99162e-3, 2.00641, 6.93838e-3},
        {"class 2", 2.00582, 6.66601e-3, 2.005476, 6.62855e-3},
        {"class 3", 2.00532, 6.26484e-3, 2.00524, 6.24573e-3},
    };
    return ref;
}

std::string format_table1(const SweepAggregate& aggregate, SweepMode mode) {
    std::ostringstream os;
    os << "Average within-class spacing, mean +/- std over " << aggregate.n_samples
       << " samples (" << to_string(mode) << ")\n";
    char line[160];
    for (std::size_t r = 0; r < 4; ++r) {
        std::snprintf(line, sizeof(line), "  class %zu (indices 4n+%zu): %.6f +/- %.3e\n",
                      r, r, aggregate.mean_of_means[r], aggregate.std_of_means[r]);
        os << line;
    }
    std::snprintf(line, sizeof(line), "  singlet set:             %.6f +/- %.3e\n",
                  aggregate.singlet_mean, aggregate.singlet_std);
    os << line;
    if (aggregate.n_broken > 0) {
        os << "  samples with broken interleaving: " << aggregate.n_broken << "\n";
    }
    os << "Full-scale reference ensemble (5000 samples x 2000 states):\n";
    for (const auto& ref : full_scale_reference()) {
        const double mean = mode == SweepMode::on_resonance_grid ? ref.on_resonance_mean
                                                                 : ref.off_resonance_mean;
        const double sd = mode == SweepMode::on_resonance_grid ? ref.on_resonance_std
                                                               : ref.off_resonance_std;
        std::snprintf(line, sizeof(line), "  %s: %.6f +/- %.3e\n", ref.klass, mean, sd);
        os << line;
    }
    return os.str();
}

namespace {

ordered_json sample_json(const SampleOutcome& o) {
    ordered_json j{{"index", o.index},
                   {"omega", o.params.omega},
                   {"omega0", o.params.omega0},
                   {"g", o.params.g},
                   {"model", to_string(o.params.model)},
                   {"converged", o.converged},
                   {"final_size", o.final_size},
                   {"n_converged", o.report.n_converged},
                   {"interleaving_broken", o.interleaving_broken},
                   {"singlet_class_id", o.report.singlet_class_id},
                   {"wall_seconds", o.wall_seconds}};
    ordered_json stats = ordered_json::array();
    for (const auto& s : o.report.class_stats) stats.push_back(stats_json(s));
    j["class_stats"] = stats;
    j["singlet_stats"] = stats_json(o.report.singlet_stats);
    return j;
}

SampleOutcome sample_from_json(const nlohmann::json& j, const ModelParams& expected) {
    SampleOutcome o;
    o.index = j.at("index").get<int>();
    o.params = expected;
    o.completed = true;
    o.skipped = true;
    o.converged = j.at("converged").get<bool>();
    o.final_size = j.at("final_size").get<int>();
    o.interleaving_broken = j.at("interleaving_broken").get<bool>();
    o.wall_seconds = j.at("wall_seconds").get<double>();
    o.report.n_converged = j.at("n_converged").get<int>();
    o.report.singlet_class_id = j.at("singlet_class_id").get<int>();
    o.report.interleaving_broken = o.interleaving_broken;
    for (std::size_t r = 0; r < 4; ++r) {
        o.report.class_stats[r] = stats_from_json(j.at("class_stats").at(r));
    }
    o.report.singlet_stats = stats_from_json(j.at("singlet_stats"));
    const double g_file = j.at("g").get<double>();
    const double w0_file = j.at("omega0").get<double>();
    if (g_file != expected.g || w0_file != expected.omega0) {
        throw std::runtime_error("sample.json does not match the configured ensemble");
    }
    return o;
}

SampleOutcome run_one_sample(int k, const ModelParams& params,
                             const SweepConfig& config,
                             const std::filesystem::path& dir) {
    SampleOutcome o;
    o.index = k;
    o.params = params;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::filesystem::create_directories(dir);
        ConvergeOptions opts;
        opts.tol_lambda = config.tol_lambda;
        opts.tol_vector = config.tol_vector;
        opts.s_max = config.s_max;
        ConvergedSpectrum conv = converge(params, config.parity, config.n_states, opts);
        o.final_size = conv.final_size;
        o.converged = conv.converged;
        const ParityBasis basis = conv.basis();
        const auto diags = compute_diagnostics(conv.spectrum, basis, conv.n_converged);
        o.report = classify_spectrum(conv, diags, params);
        o.interleaving_broken = o.report.interleaving_broken;

        write_spectrum_csv(dir / "spectrum.csv", conv);
        write_diagnostics_csv(dir / "diagnostics.csv", diags);
        write_classes_csv(dir / "classes.csv", o.report, diags);
        o.completed = true;
        o.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_json_file(dir / "sample.json", sample_json(o));
    } catch (const std::exception& e) {
        o.error = e.what();
        o.completed = false;
        o.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return o;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, const std::filesystem::path& outdir) {
    config.validate();
    std::filesystem::create_directories(outdir / "samples");
    const auto manifest_path = outdir / "manifest.json";

    const ordered_json cfg = config_json(config);
    if (std::filesystem::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        nlohmann::json previous = nlohmann::json::parse(in);
        if (previous.at("config") != nlohmann::json(cfg)) {
            throw std::runtime_error(
                "run_sweep: output directory holds a manifest for a different "
                "configuration; refusing to mix ensembles");
        }
    }
    // Manifest goes out before any results.
    ordered_json manifest{{"tool", "dicke sweep"},
                          {"version", kVersion},
                          {"config", cfg},
                          {"complete", false}};
    write_json_file(manifest_path, manifest);

    const std::vector<ModelParams> params = sample_parameters(config);
    std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(config.n_samples));

    int workers = config.workers > 0
                      ? config.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, config.n_samples));
    if (workers > 1) blas_single_thread();

    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int k = next.fetch_add(1);
            if (k >= config.n_samples) break;
            const auto dir = outdir / "samples" / std::to_string(k);
            const auto marker = dir / "sample.json";
            const auto& p = params[static_cast<std::size_t>(k)];
            SampleOutcome o;
            if (std::filesystem::exists(marker)) {
                try {
                    std::ifstream in(marker);
                    o = sample_from_json(nlohmann::json::parse(in), p);
                } catch (const std::exception&) {
                    o = run_one_sample(k, p, config, dir);  // stale marker: redo
                }
            } else {
                o = run_one_sample(k, p, config, dir);
            }
            outcomes[static_cast<std::size_t>(k)] = std::move(o);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult result;
    result.samples = std::move(outcomes);
    result.manifest_path = manifest_path;

    std::vector<SpectralClassReport> reports;
    ordered_json sample_summaries = ordered_json::array();
    for (const auto& o : result.samples) {
        if (o.completed) {
            reports.push_back(o.report);
        } else {
            ++result.n_failed;
        }
        ordered_json js = o.completed ? sample_json(o)
                                      : ordered_json{{"index", o.index},
                                                     {"g", o.params.g},
                                                     {"omega0", o.params.omega0},
                                                     {"error", o.error}};
        js["skipped"] = o.skipped;
        sample_summaries.push_back(js);
    }
    if (!reports.empty()) {
        result.aggregate = aggregate_sweep(reports);

        CsvWriter csv(outdir / "table1.csv");
        csv.write_row({"class_id", "mean_spacing", "std_between_samples", "n_samples"});
        for (std::size_t r = 0; r < 4; ++r) {
            csv.write_row({std::to_string(r), csv_number(result.aggregate.mean_of_means[r]),
                           csv_number(result.aggregate.std_of_means[r]),
                           std::to_string(result.aggregate.n_samples)});
        }
        csv.write_row({"singlet", csv_number(result.aggregate.singlet_mean),
                       csv_number(result.aggregate.singlet_std),
                       std::to_string(result.aggregate.n_samples)});
        csv.close();

        std::ofstream txt(outdir / "table1.txt", std::ios::binary);
        txt << format_table1(result.aggregate, config.mode);
    }

    manifest["samples"] = sample_summaries;
    manifest["n_failed"] = result.n_failed;
    if (!reports.empty()) {
        manifest["aggregate"] =
            ordered_json{{"mean_of_means", result.aggregate.mean_of_means},
                         {"std_of_means", result.aggregate.std_of_means},
                         {"singlet_mean", result.aggregate.singlet_mean},
                         {"singlet_std", result.aggregate.singlet_std},
                         {"n_broken", result.aggregate.n_broken}};
    }
    manifest["complete"] = true;
    write_json_file(manifest_path, manifest);
    return result;
}

}  // namespace dicke
