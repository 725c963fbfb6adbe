#include "dicke/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

constexpr double kWeightThreshold = 1e-8;  // trapped weight >= 1 - this

ClassStats stats_of(const std::vector<double>& spacings) {
    ClassStats s;
    s.n_spacings = static_cast<int>(spacings.size());
    if (spacings.empty()) return s;
    double sum = 0.0;
    for (double v : spacings) sum += v;
    s.mean = sum / static_cast<double>(spacings.size());
    if (spacings.size() > 1) {
        double ss = 0.0;
        for (double v : spacings) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(spacings.size() - 1));
    }
    return s;
}

// Fallback singlet test: maximal concurrence at an eigenvalue sitting on the
// shifted photon grid of the right parity.
bool fallback_singlet(const StateDiagnostics& d, const ModelParams& params,
                      Parity parity) {
    if (std::abs(d.concurrence - 1.0) > kWeightThreshold) return false;
    const double shift =
        params.model == Model::dicke
            ? params.dipole_sum() / 4.0
            : (params.dipole[0] - params.dipole[1] - params.dipole[2]) / 4.0;
    const double x = (d.eigenvalue + shift) / params.omega;
    const long n = std::lround(x);
    if (n < 0 || std::abs(x - static_cast<double>(n)) > kWeightThreshold) return false;
    // Dicke singlets: odd n in positive parity; variant Phi-: even n there.
    const bool n_odd = (n % 2 != 0);
    const bool positive = (parity == Parity::positive);
    return params.model == Model::dicke ? (n_odd == positive) : (n_odd != positive);
}

bool is_trapped_state(const StateDiagnostics& d, const ModelParams& params,
                      Parity parity) {
    const double w = params.model == Model::dicke ? d.singlet_weight : d.phi_minus_weight;
    if (w >= 1.0 - kWeightThreshold) return true;
    return fallback_singlet(d, params, parity);
}

}  // namespace

SpectralClassReport classify_spectrum(const ConvergedSpectrum& converged,
                                      const std::vector<StateDiagnostics>& diagnostics,
                                      const ModelParams& params) {
    const int n = converged.n_converged;
    if (n < 16) {
        throw std::invalid_argument("classify_spectrum: need at least 16 converged states");
    }
    if (static_cast<int>(diagnostics.size()) < n) {
        throw std::invalid_argument("classify_spectrum: diagnostics shorter than spectrum");
    }

    SpectralClassReport report;
    report.n_converged = n;
    report.n_trusted = (9 * n) / 10;  // distrust the truncation edge

    for (int i = 0; i < n; ++i) {
        report.class_members[static_cast<std::size_t>(i % 4)].push_back(
            {i, converged.spectrum.eigenvalues(i)});
        if (is_trapped_state(diagnostics[static_cast<std::size_t>(i)], params,
                             converged.parity)) {
            report.singlet_indices.push_back(i);
        }
    }

    // Within-class consecutive spacings over the trusted window; these equal
    // the fourth-nearest-neighbor spacings of the full sorted spectrum.
    for (std::size_t r = 0; r < 4; ++r) {
        const auto& members = report.class_members[r];
        for (std::size_t m = 0; m + 1 < members.size(); ++m) {
            if (members[m + 1].index >= report.n_trusted) break;
            report.spacings[r].push_back(members[m + 1].eigenvalue -
                                         members[m].eigenvalue);
        }
        report.class_stats[r] = stats_of(report.spacings[r]);
    }

    // The singlet residue class: all trusted singlets must fall in one
    // residue and be consecutive members of it. Non-singlet members below the
    // first singlet are fine (the ground-state cluster precedes the first
    // singlet at strong coupling); interruptions between singlets are not.
    report.singlet_class_id = -1;
    std::vector<int> trusted_singlets;
    for (int i : report.singlet_indices) {
        if (i < report.n_trusted) trusted_singlets.push_back(i);
    }
    if (!trusted_singlets.empty()) {
        const int residue = trusted_singlets.front() % 4;
        bool same_residue = true;
        for (int i : trusted_singlets) same_residue &= (i % 4 == residue);
        bool consecutive = true;
        for (std::size_t m = 0; m + 1 < trusted_singlets.size(); ++m) {
            consecutive &= (trusted_singlets[m + 1] - trusted_singlets[m] == 4);
        }
        if (same_residue && consecutive) report.singlet_class_id = residue;
    }
    report.interleaving_broken = (report.singlet_class_id < 0);

    std::vector<double> singlet_spacings;
    for (std::size_t m = 0; m + 1 < report.singlet_indices.size(); ++m) {
        const int i = report.singlet_indices[m];
        const int j = report.singlet_indices[m + 1];
        if (j >= report.n_trusted) break;
        singlet_spacings.push_back(converged.spectrum.eigenvalues(j) -
                                   converged.spectrum.eigenvalues(i));
    }
    report.singlet_stats = stats_of(singlet_spacings);
    return report;
}

std::array<ClassStats, 4> spacing_statistics(const SpectralClassReport& report) {
    std::array<ClassStats, 4> out;
    for (std::size_t r = 0; r < 4; ++r) {
        if (report.class_stats[r].n_spacings < 3) {
            throw std::invalid_argument("spacing_statistics: class " + std::to_string(r) +
                                        " has fewer than 4 trusted members");
        }
        out[r] = report.class_stats[r];
    }
    return out;
}

SweepAggregate aggregate_sweep(const std::vector<SpectralClassReport>& reports) {
    if (reports.empty()) {
        throw std::invalid_argument("aggregate_sweep: no sample reports");
    }
    SweepAggregate agg;
    agg.n_samples = static_cast<int>(reports.size());

    for (std::size_t r = 0; r < 4; ++r) {
        std::vector<double> means;
        for (const auto& rep : reports) {
            if (rep.class_stats[r].n_spacings > 0) means.push_back(rep.class_stats[r].mean);
        }
        const ClassStats s = stats_of(means);
        agg.mean_of_means[r] = s.mean;
        agg.std_of_means[r] = s.stddev;
    }
    std::vector<double> singlet_means;
    for (const auto& rep : reports) {
        if (rep.interleaving_broken) ++agg.n_broken;
        if (rep.singlet_stats.n_spacings > 0) singlet_means.push_back(rep.singlet_stats.mean);
    }
    const ClassStats s = stats_of(singlet_means);
    agg.singlet_mean = s.mean;
    agg.singlet_std = s.stddev;
    return agg;
}

}  // namespace dicke
