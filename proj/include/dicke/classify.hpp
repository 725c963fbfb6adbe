// classify.hpp — partition of a converged spectrum into the four interleaved
// index-residue classes, per-class spacing statistics, singlet-class
// detection, and ensemble aggregation.

#pragma once

#include <array>
#include <vector>

#include "dicke/eigensolver.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/model.hpp"

namespace dicke {

struct ClassMember {
    int index = 0;
    double eigenvalue = 0.0;
};

struct ClassStats {
    double mean = 0.0;
    double stddev = 0.0;
    int n_spacings = 0;
};

struct SpectralClassReport {
    // Residue classes: class r holds converged indices with index % 4 == r.
    std::array<std::vector<ClassMember>, 4> class_members;
    std::array<std::vector<double>, 4> spacings;  // within-class consecutive
    std::array<ClassStats, 4> class_stats;

    int singlet_class_id = -1;       // residue class of the singlet set
    bool interleaving_broken = false;
    std::vector<int> singlet_indices;  // per-state detection by weight
    ClassStats singlet_stats;          // spacings between detected singlets

    int n_converged = 0;
    int n_trusted = 0;  // after excluding the top 10% (truncation edge)
};

// Classifies the first n_converged states. The singlet class is the residue
// class whose trusted members all have singlet weight >= 1 - 1e-8 (fallback:
// concurrence within 1e-8 of 1 and eigenvalue within 1e-8 of w n - sum d/4).
// If no residue class qualifies, singlets are identified per state and the
// report is flagged interleaving_broken.
SpectralClassReport classify_spectrum(const ConvergedSpectrum& converged,
                                      const std::vector<StateDiagnostics>& diagnostics,
                                      const ModelParams& params);

// Mean/stddev of within-class consecutive spacings, tail excluded. Throws
// std::invalid_argument when a class has fewer than 4 trusted members.
std::array<ClassStats, 4> spacing_statistics(const SpectralClassReport& report);

struct SweepAggregate {
    std::array<double, 4> mean_of_means{};
    std::array<double, 4> std_of_means{};
    double singlet_mean = 0.0;
    double singlet_std = 0.0;
    int n_samples = 0;
    int n_broken = 0;  // samples flagged interleaving_broken
};

SweepAggregate aggregate_sweep(const std::vector<SpectralClassReport>& reports);

}  // namespace dicke
