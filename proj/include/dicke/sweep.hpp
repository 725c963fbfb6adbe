// sweep.hpp — deterministic parameter ensembles, parallel per-sample
// converge/diagnose/classify pipelines, and persistence.
//
// Output layout under <outdir>:
//   manifest.json                 config echo + per-sample summaries
//   samples/<k>/spectrum.csv      index, eigenvalue, delta_lambda, delta_vector
//   samples/<k>/diagnostics.csv   per-state measures
//   samples/<k>/classes.csv       eigenvalue, concurrence, mi, class_id
//   samples/<k>/sample.json       completion marker (enables resume)
//   table1.csv, table1.txt        ensemble spacing aggregate

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dicke/classify.hpp"
#include "dicke/model.hpp"

namespace dicke {

enum class SweepMode { on_resonance_grid, off_resonance_random };

inline const char* to_string(SweepMode m) {
    return m == SweepMode::on_resonance_grid ? "on_resonance_grid"
                                             : "off_resonance_random";
}

struct SweepConfig {
    SweepMode mode = SweepMode::on_resonance_grid;
    int n_samples = 1;
    double omega = 1.0;
    double g_min = 0.05, g_max = 5.0;          // in units of omega
    double omega0_min = 0.5, omega0_max = 1.5; // random mode only
    int n_states = 400;
    double tol_lambda = 1e-10;
    double tol_vector = 1e-10;
    int s_max = 12000;
    std::uint64_t rng_seed = 1;
    Parity parity = Parity::positive;
    Model model = Model::dicke;
    int workers = 0;  // 0: hardware concurrency

    void validate() const;
};

// Counter-based generator: sample k is derived from (rng_seed, k) alone, so
// any subset of samples can be regenerated independently and in parallel.
std::vector<ModelParams> sample_parameters(const SweepConfig& config);

struct SampleOutcome {
    int index = 0;
    ModelParams params;
    bool completed = false;
    bool converged = false;
    bool interleaving_broken = false;
    bool skipped = false;  // already present from a previous run
    int final_size = 0;
    double wall_seconds = 0.0;
    std::string error;
    SpectralClassReport report;
};

struct SweepResult {
    std::vector<SampleOutcome> samples;
    SweepAggregate aggregate;
    int n_failed = 0;
    std::filesystem::path manifest_path;
};

// Runs (or resumes) the ensemble. Failures are isolated per sample and
// recorded; the aggregate covers completed samples only.
SweepResult run_sweep(const SweepConfig& config,
                      const std::filesystem::path& outdir);

// Per-run CSV writers shared by the sweep and the CLI front end.
void write_spectrum_csv(const std::filesystem::path& path,
                        const ConvergedSpectrum& converged);
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<StateDiagnostics>& rows);
void write_classes_csv(const std::filesystem::path& path,
                       const SpectralClassReport& report,
                       const std::vector<StateDiagnostics>& rows);

// Clamp BLAS to one thread per call when running our own worker pool.
void blas_single_thread();

// Reference spacing values from the full-scale ensemble (5000 samples x 2000
// states per parity subspace), for comparison in desk-scale reports.
struct FullScaleReference {
    const char* klass;
    double on_resonance_mean, on_resonance_std;
    double off_resonance_mean, off_resonance_std;
};
const std::vector<FullScaleReference>& full_scale_reference();

std::string format_table1(const SweepAggregate& aggregate, SweepMode mode);

}  // namespace dicke
