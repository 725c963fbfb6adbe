// entanglement.hpp — reduced two-qubit states of parity-basis eigenvectors and
// the measures computed on them: Wootters concurrence (closed form plus a
// structure-free 4x4 evaluation), von Neumann mutual information, Mandel Q.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "dicke/eigensolver.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/model.hpp"

namespace dicke {

// Two-qubit reduced density matrix of a parity-subspace vector. Triplet-sector
// eigenvectors give a pure X form (r_sing = 0); general vectors carry an
// additional singlet population r_sing and a Psi+/Psi- coherence, with
//   trace = r_ee + 2 r_psi + r_gg + r_sing = 1.
struct XState {
    double r_ee = 0.0;
    double r_psi = 0.0;  // half the Psi+ population, as in the X form
    double r_gg = 0.0;
    std::complex<double> r_eg{0.0, 0.0};

    double r_sing = 0.0;                      // Psi- population
    std::complex<double> psi_sing{0.0, 0.0};  // <Psi+| rho |Psi->

    double trace() const { return r_ee + 2.0 * r_psi + r_gg + r_sing; }

    // Throws std::invalid_argument when trace or positivity constraints are
    // violated beyond `tol`.
    void validate(double tol = 1e-12) const;

    // Dense 4x4 density matrix in the bare order (ee, eg, ge, gg).
    Eigen::Matrix4cd to_density_matrix() const;
};

// Partial trace over the field. The vector must be unit norm to 1e-10.
XState reduce_to_qubits(const Eigen::VectorXd& v, const ParityBasis& basis);

// Wootters concurrence. Uses the closed-form X-state eigenvalues
// {4 r_psi^2, (sqrt(r_ee r_gg) +/- |r_eg|)^2, 0} when r_sing is negligible,
// otherwise falls back to the 4x4 evaluation.
double concurrence(const XState& x);

// Structure-free evaluation on any two-qubit density matrix:
// C = max(0, e1 - e2 - e3 - e4), e = sqrt(eigenvalues of rho~ rho) descending,
// rho~ = (sy (x) sy) rho* (sy (x) sy). Basis order (ee, eg, ge, gg).
double concurrence_bruteforce(const Eigen::Matrix4cd& rho);

// I = S(rho1) + S(rho2) - S(rho12) with base-2 entropies; in [0, 2].
double mutual_information(const XState& x);
double mutual_information(const Eigen::Matrix4cd& rho);

// Q = (<n^2> - <n>^2)/<n> - 1 from the photon-number marginal; nullopt for a
// vacuum-only state (<n> = 0), where Q is undefined.
std::optional<double> mandel_q(const Eigen::VectorXd& v, const ParityBasis& basis);

// <Sz> of the reduced state; <Sx> and <Sy> vanish identically on X states.
double sz_expectation(const XState& x);

// Per-eigenstate diagnostics row as persisted by the sweep and CLI layers.
// singlet_weight is the Psi- population; phi_minus_weight the Phi- population
// (the isolated branch of the variant model).
struct StateDiagnostics {
    int index = 0;
    double eigenvalue = 0.0;
    double concurrence = 0.0;
    double mutual_information = 0.0;
    std::optional<double> mandel_q;
    double sz = 0.0;
    double singlet_weight = 0.0;
    double phi_minus_weight = 0.0;
};

std::vector<StateDiagnostics> compute_diagnostics(const Spectrum& spectrum,
                                                  const ParityBasis& basis,
                                                  int n_states);

}  // namespace dicke
