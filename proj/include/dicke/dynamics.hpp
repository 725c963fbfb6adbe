// dynamics.hpp — closed-system evolution of system (x) environment composites
// and trapping-state verification.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "dicke/hamiltonian.hpp"
#include "dicke/model.hpp"

namespace dicke {

// |psi(t)> = exp(-i H t) |psi(0)> via spectral decomposition. H must be
// Hermitian with dimension <= kDenseDimensionGuard; psi0 unit norm. Norm is
// conserved to 1e-12 and energy to 1e-10 relative, checked on every call.
std::vector<Eigen::VectorXcd> evolve(const Eigen::MatrixXcd& hamiltonian,
                                     const Eigen::VectorXcd& psi0,
                                     const std::vector<double>& times);

enum class TrapKind {
    singlet_pairs,    // (|ge> - |eg>)/sqrt2 per pair  (Dicke model)
    phi_minus_pairs,  // (|ee> - |gg>)/sqrt2 per pair  (variant model)
};

struct TrappingState {
    int photon = 0;                   // system field Fock number
    std::vector<int> qubit_mode_occupations;  // {m} for the b modes
    std::vector<int> field_mode_occupations;  // occupations for the c modes
    TrapKind kind = TrapKind::singlet_pairs;
    int n_qubits = 2;
    double field_alpha = 0.0;  // optional coherent displacement of the field
};

struct FidelityPoint {
    double t = 0.0;
    double qubit_fidelity = 0.0;  // overlap of rho_q(t) with the trap factor
    double field_mean_n = 0.0;
    double qubit_purity = 0.0;
};

// Evolves |n>_a (x) trap factor (x) |{m}>_env under the composite Hamiltonian
// (driving and dipole terms included from params) and traces down to the
// two-qubit register at each time.
std::vector<FidelityPoint> trapping_fidelity(const ModelParams& params,
                                             const EnvironmentParams& env,
                                             const TrappingState& trap,
                                             const std::vector<double>& times,
                                             int photon_levels = 8);

// Product of pair Bell factors over a perfect matching, tensored with |n>.
Eigen::VectorXcd multiqubit_trap_state(int n_qubits, TrapKind kind,
                                       const Matching& matching, int photon,
                                       int photon_levels);

struct MultiqubitTrapReport {
    double eigenvalue = 0.0;       // w * photon
    double eigen_residual = 0.0;   // ||H v - w n v||
    std::array<double, 3> spin_norms{};  // ||S_x v||, ||S_y v||, ||S_z v||
};

// Builds the 2k-qubit trap for the given matching and reports how well it is
// an eigenstate and which collective spins annihilate it. Dicke paired
// singlets are annihilated by all three; variant pairs by S_x only.
MultiqubitTrapReport verify_multiqubit_traps(int n_qubits,
                                             const ModelParams& params,
                                             const Matching& matching,
                                             int photon, int photon_levels);

MultiqubitTrapReport verify_trap_vector(const Eigen::VectorXcd& state,
                                        int n_qubits,
                                        const ModelParams& params,
                                        const Matching& matching, int photon,
                                        int photon_levels);

}  // namespace dicke
