// hamiltonian.hpp — matrix builders for the two-qubit Dicke model
//   H1 = w n + w0 Sz + g (a^+ + a) Sx
// and its variant
//   H2 = w n + w0 (sz1 - sz2) + g (a^+ + a) Sx,
// with optional driving (Ox Sx, Oy Sy), dipole-dipole terms
// (sum_j delta_j sj1 sj2), bath couplings, and even qubit ensembles.

#pragma once

#include <Eigen/Dense>

#include <complex>

#include "dicke/banded.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/model.hpp"

namespace dicke {

// Largest dense dimension accepted by the full-space builders.
inline constexpr int kDenseDimensionGuard = 1 << 14;

// Projection of the Hamiltonian onto a parity subspace. Driving breaks parity
// and is rejected here; use build_dense_hamiltonian for driven systems.
SymmetricBandedMatrix build_parity_hamiltonian(const ModelParams& params,
                                               const ParityBasis& basis);

// Full-space Hamiltonian on Fock(photon_levels) (x) (C^2)^n_qubits with no
// parity projection. n_qubits must be even. The variant's w0 term and the
// dipole terms act pairwise over `matching` (defaults to (0,1)(2,3)...).
// Composite ordering: field (x) qubit 0 (x) qubit 1 (x) ...; each qubit in
// the |e>, |g> basis. The matrix is Hermitian; it is real when drive_y = 0.
Eigen::MatrixXcd build_dense_hamiltonian(const ModelParams& params,
                                         int photon_levels,
                                         int n_qubits = 2,
                                         const Matching& matching = {});

// System plus environment:
//   H = H_sys + sum_j nu_j b_j^+ b_j + sum_j kappa_j (b_j^+ + b_j) Sx
//            + sum_j mu_j c_j^+ c_j + sum_j chi_j (c_j^+ + c_j)(a^+ + a).
// Ordering: field a (x) qubit 0 (x) qubit 1 (x) qubit modes (x) field modes.
Eigen::MatrixXcd build_composite_hamiltonian(const ModelParams& params,
                                             const EnvironmentParams& env,
                                             int photon_levels);

int composite_dimension(const EnvironmentParams& env, int photon_levels,
                        int n_qubits = 2);

// Elementary operators used by the dense builders; exposed for tests and
// dynamics code.
namespace ops {

Eigen::MatrixXd annihilation(int levels);            // a
Eigen::MatrixXd number(int levels);                  // n = a^+ a
Eigen::MatrixXd position_quadrature(int levels);     // a + a^+

Eigen::Matrix2cd sx();  // sigma_x / 2
Eigen::Matrix2cd sy();  // sigma_y / 2
Eigen::Matrix2cd sz();  // sigma_z / 2

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Single-qubit operator embedded at position `which` of `n_qubits`.
Eigen::MatrixXcd qubit_operator(const Eigen::Matrix2cd& op, int which, int n_qubits);

// Collective spin S_axis = sum_k s_axis^(k); axis in {0:x, 1:y, 2:z}.
Eigen::MatrixXcd collective_spin(int axis, int n_qubits);

}  // namespace ops

}  // namespace dicke
