#include "dicke/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

namespace {

bool is_pair(QubitLabel a, QubitLabel b, QubitLabel x, QubitLabel y) {
    return (a == x && b == y) || (a == y && b == x);
}

// Diagonal qubit energy of one label: the w0 term plus the z dipole.
double qubit_diagonal(QubitLabel l, const ModelParams& p) {
    double e = 0.0;
    if (p.model == Model::dicke) {
        // w0 Sz: +-w0 on ee/gg, 0 on ge/eg.
        if (l == QubitLabel::ee) e += p.omega0;
        if (l == QubitLabel::gg) e -= p.omega0;
    } else {
        // w0 (sz1 - sz2): -+w0 on ge/eg, 0 on ee/gg.
        if (l == QubitLabel::ge) e -= p.omega0;
        if (l == QubitLabel::eg) e += p.omega0;
    }
    // delta_z sz1 sz2: +1/4 on ee/gg, -1/4 on ge/eg.
    const bool aligned = (l == QubitLabel::ee || l == QubitLabel::gg);
    e += (aligned ? 0.25 : -0.25) * p.dipole[2];
    return e;
}

// <l1| H |l2> for two states on the same photon number (dipole x/y flips).
double same_photon_offdiagonal(QubitLabel a, QubitLabel b, const ModelParams& p) {
    if (is_pair(a, b, QubitLabel::ee, QubitLabel::gg)) {
        // sx1 sx2 flips both (+1/4); sy1 sy2 gives -1/4 between ee and gg.
        return 0.25 * (p.dipole[0] - p.dipole[1]);
    }
    if (is_pair(a, b, QubitLabel::ge, QubitLabel::eg)) {
        return 0.25 * (p.dipole[0] + p.dipole[1]);
    }
    return 0.0;
}

// <l1| Sx |l2>: 1/2 between any aligned (ee/gg) and anti-aligned (ge/eg) label.
double sx_element(QubitLabel a, QubitLabel b) {
    const bool a_aligned = (a == QubitLabel::ee || a == QubitLabel::gg);
    const bool b_aligned = (b == QubitLabel::ee || b == QubitLabel::gg);
    return a_aligned != b_aligned ? 0.5 : 0.0;
}

}  // namespace

SymmetricBandedMatrix build_parity_hamiltonian(const ModelParams& params,
                                               const ParityBasis& basis) {
    params.validate();
    if (params.has_driving()) {
        throw std::invalid_argument(
            "build_parity_hamiltonian: Sx/Sy driving breaks parity; "
            "use build_dense_hamiltonian for driven systems");
    }
    const int n = basis.size();
    SymmetricBandedMatrix h(n, 3);
    for (int i = 0; i < n; ++i) {
        const BasisState& si = basis.state(i);
        h.set(i, i, params.omega * si.photon + qubit_diagonal(si.label, params));
        for (int j = i + 1; j <= std::min(n - 1, i + 3); ++j) {
            const BasisState& sj = basis.state(j);
            double v = 0.0;
            if (si.photon == sj.photon) {
                v = same_photon_offdiagonal(si.label, sj.label, params);
            } else if (std::abs(si.photon - sj.photon) == 1) {
                // g (a + a^+) Sx: <n|(a+a^+)|n+1> = sqrt(n+1).
                const int upper = std::max(si.photon, sj.photon);
                v = params.g * std::sqrt(static_cast<double>(upper)) *
                    sx_element(si.label, sj.label);
            }
            if (v != 0.0) h.set(i, j, v);
        }
    }
    return h;
}

namespace ops {

Eigen::MatrixXd annihilation(int levels) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXd number(int levels) {
    Eigen::MatrixXd n = Eigen::MatrixXd::Zero(levels, levels);
    for (int k = 0; k < levels; ++k) n(k, k) = k;
    return n;
}

Eigen::MatrixXd position_quadrature(int levels) {
    const Eigen::MatrixXd a = annihilation(levels);
    return a + a.transpose();
}

Eigen::Matrix2cd sx() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 0.5;
    m(1, 0) = 0.5;
    return m;
}

Eigen::Matrix2cd sy() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = std::complex<double>(0.0, -0.5);
    m(1, 0) = std::complex<double>(0.0, 0.5);
    return m;
}

Eigen::Matrix2cd sz() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = 0.5;
    m(1, 1) = -0.5;
    return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::MatrixXcd qubit_operator(const Eigen::Matrix2cd& op, int which, int n_qubits) {
    if (which < 0 || which >= n_qubits) {
        throw std::invalid_argument("qubit_operator: index out of range");
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n_qubits; ++k) {
        out = kron(out, k == which ? Eigen::MatrixXcd(op)
                                   : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()));
    }
    return out;
}

Eigen::MatrixXcd collective_spin(int axis, int n_qubits) {
    const Eigen::Matrix2cd s = axis == 0 ? sx() : axis == 1 ? sy() : sz();
    const int dim = 1 << n_qubits;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < n_qubits; ++k) out += qubit_operator(s, k, n_qubits);
    return out;
}

}  // namespace ops

Eigen::MatrixXcd build_dense_hamiltonian(const ModelParams& params,
                                         int photon_levels, int n_qubits,
                                         const Matching& matching_in) {
    params.validate();
    if (photon_levels < 1) {
        throw std::invalid_argument("build_dense_hamiltonian: photon_levels must be >= 1");
    }
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw std::invalid_argument("build_dense_hamiltonian: n_qubits must be even and >= 2");
    }
    const int qdim = 1 << n_qubits;
    const long total = static_cast<long>(photon_levels) * qdim;
    if (total > kDenseDimensionGuard) {
        throw std::invalid_argument("build_dense_hamiltonian: dimension " +
                                    std::to_string(total) + " exceeds guard " +
                                    std::to_string(kDenseDimensionGuard));
    }
    const Matching matching =
        matching_in.empty() ? consecutive_matching(n_qubits) : matching_in;
    validate_matching(matching, n_qubits);

    using Eigen::MatrixXcd;
    const MatrixXcd id_f = Eigen::MatrixXd::Identity(photon_levels, photon_levels);
    const MatrixXcd sx_tot = ops::collective_spin(0, n_qubits);

    // Qubit-space part: w0 term, driving, dipole over the matching pairs.
    MatrixXcd q = Eigen::MatrixXcd::Zero(qdim, qdim);
    if (params.model == Model::dicke) {
        q += params.omega0 * ops::collective_spin(2, n_qubits);
    } else {
        for (auto [p, r] : matching) {
            q += params.omega0 * (ops::qubit_operator(ops::sz(), p, n_qubits) -
                                  ops::qubit_operator(ops::sz(), r, n_qubits));
        }
    }
    if (params.drive_x != 0.0) q += params.drive_x * sx_tot;
    if (params.drive_y != 0.0) q += params.drive_y * ops::collective_spin(1, n_qubits);
    const Eigen::Matrix2cd spins[3] = {ops::sx(), ops::sy(), ops::sz()};
    for (int axis = 0; axis < 3; ++axis) {
        if (params.dipole[static_cast<std::size_t>(axis)] == 0.0) continue;
        for (auto [p, r] : matching) {
            q += params.dipole[static_cast<std::size_t>(axis)] *
                 (ops::qubit_operator(spins[axis], p, n_qubits) *
                  ops::qubit_operator(spins[axis], r, n_qubits));
        }
    }

    MatrixXcd h = params.omega * ops::kron(MatrixXcd(ops::number(photon_levels)),
                                           MatrixXcd::Identity(qdim, qdim));
    h += ops::kron(id_f, q);
    h += params.g * ops::kron(MatrixXcd(ops::position_quadrature(photon_levels)), sx_tot);
    return h;
}

int composite_dimension(const EnvironmentParams& env, int photon_levels, int n_qubits) {
    long d = static_cast<long>(photon_levels) * (1L << n_qubits);
    for (const auto& m : env.qubit_modes) d *= m.truncation;
    for (const auto& m : env.field_modes) d *= m.truncation;
    if (d > kDenseDimensionGuard) {
        throw std::invalid_argument("composite dimension " + std::to_string(d) +
                                    " exceeds guard " +
                                    std::to_string(kDenseDimensionGuard));
    }
    return static_cast<int>(d);
}

Eigen::MatrixXcd build_composite_hamiltonian(const ModelParams& params,
                                             const EnvironmentParams& env,
                                             int photon_levels) {
    env.validate();
    const int total = composite_dimension(env, photon_levels, 2);
    (void)total;

    using Eigen::MatrixXcd;
    const MatrixXcd h_sys = build_dense_hamiltonian(params, photon_levels, 2);
    const int sys_dim = static_cast<int>(h_sys.rows());

    int env_dim = 1;
    for (const auto& m : env.qubit_modes) env_dim *= m.truncation;
    for (const auto& m : env.field_modes) env_dim *= m.truncation;

    MatrixXcd h = ops::kron(h_sys, MatrixXcd::Identity(env_dim, env_dim));

    // Mode slot m within the environment factor: dims before/after it.
    auto embed_env = [&](int slot_index, const MatrixXcd& op) {
        int before = 1, after = 1;
        int idx = 0;
        for (const auto& list : {env.qubit_modes, env.field_modes}) {
            for (const auto& m : list) {
                if (idx < slot_index) before *= m.truncation;
                if (idx > slot_index) after *= m.truncation;
                ++idx;
            }
        }
        return ops::kron(ops::kron(MatrixXcd::Identity(before, before), op),
                         MatrixXcd::Identity(after, after));
    };

    const MatrixXcd sx_sys =
        ops::kron(MatrixXcd::Identity(photon_levels, photon_levels),
                  ops::collective_spin(0, 2));
    const MatrixXcd x_field =
        ops::kron(MatrixXcd(ops::position_quadrature(photon_levels)),
                  MatrixXcd::Identity(4, 4));
    const MatrixXcd id_sys = MatrixXcd::Identity(sys_dim, sys_dim);

    int slot = 0;
    for (const auto& m : env.qubit_modes) {
        const MatrixXcd nb = embed_env(slot, MatrixXcd(ops::number(m.truncation)));
        const MatrixXcd xb = embed_env(slot, MatrixXcd(ops::position_quadrature(m.truncation)));
        h += m.frequency * ops::kron(id_sys, nb);
        h += m.coupling * ops::kron(sx_sys, xb);
        ++slot;
    }
    for (const auto& m : env.field_modes) {
        const MatrixXcd nc = embed_env(slot, MatrixXcd(ops::number(m.truncation)));
        const MatrixXcd xc = embed_env(slot, MatrixXcd(ops::position_quadrature(m.truncation)));
        h += m.frequency * ops::kron(id_sys, nc);
        h += m.coupling * ops::kron(x_field, xc);
        ++slot;
    }
    return h;
}

}  // namespace dicke
