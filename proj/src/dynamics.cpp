#include "dicke/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dicke/eigensolver.hpp"

namespace dicke {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_unit_norm(const Eigen::VectorXcd& v, const char* who) {
    if (std::abs(v.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument(std::string(who) + ": state must be unit norm");
    }
}

Eigen::VectorXcd fock_vector(int levels, int n) {
    if (n < 0 || n >= levels) {
        throw std::invalid_argument("Fock occupation " + std::to_string(n) +
                                    " outside truncation " + std::to_string(levels));
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(levels);
    v(n) = 1.0;
    return v;
}

// Truncated coherent state, renormalized.
Eigen::VectorXcd coherent_vector(int levels, double alpha) {
    Eigen::VectorXcd v(levels);
    double log_fact = 0.0;
    for (int n = 0; n < levels; ++n) {
        if (n > 0) log_fact += std::log(static_cast<double>(n));
        v(n) = std::pow(alpha, n) * std::exp(-0.5 * alpha * alpha - 0.5 * log_fact);
    }
    v.normalize();
    return v;
}

Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

}  // namespace

std::vector<Eigen::VectorXcd> evolve(const Eigen::MatrixXcd& hamiltonian,
                                     const Eigen::VectorXcd& psi0,
                                     const std::vector<double>& times) {
    if (hamiltonian.rows() != hamiltonian.cols() ||
        hamiltonian.rows() != psi0.size()) {
        throw std::invalid_argument("evolve: dimension mismatch");
    }
    if (hamiltonian.rows() > kDenseDimensionGuard) {
        throw std::invalid_argument("evolve: dimension exceeds guard");
    }
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("evolve: Hamiltonian must be Hermitian");
    }
    check_unit_norm(psi0, "evolve");

    const ComplexSpectrum es = eigh(hamiltonian);
    const Eigen::VectorXcd coeff = es.eigenvectors.adjoint() * psi0;
    const double energy0 = (coeff.array().abs2() * es.eigenvalues.array()).sum();
    const double escale = std::max(1.0, std::abs(energy0));

    std::vector<Eigen::VectorXcd> out;
    out.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXcd phase(coeff.size());
        for (Eigen::Index k = 0; k < coeff.size(); ++k) {
            phase(k) = std::polar(1.0, -es.eigenvalues(k) * t) * coeff(k);
        }
        Eigen::VectorXcd psi = es.eigenvectors * phase;
        if (std::abs(psi.norm() - 1.0) > 1e-12) {
            throw std::runtime_error("evolve: norm drift at t=" + std::to_string(t));
        }
        const double energy = (psi.adjoint() * hamiltonian * psi)(0).real();
        if (std::abs(energy - energy0) > 1e-10 * escale) {
            throw std::runtime_error("evolve: energy drift at t=" + std::to_string(t));
        }
        out.push_back(std::move(psi));
    }
    return out;
}

std::vector<FidelityPoint> trapping_fidelity(const ModelParams& params,
                                             const EnvironmentParams& env,
                                             const TrappingState& trap,
                                             const std::vector<double>& times,
                                             int photon_levels) {
    if (trap.n_qubits != 2) {
        throw std::invalid_argument("trapping_fidelity: composite runs are two-qubit");
    }
    const bool dicke_pairing =
        (params.model == Model::dicke && trap.kind == TrapKind::singlet_pairs);
    const bool variant_pairing =
        (params.model == Model::variant && trap.kind == TrapKind::phi_minus_pairs);
    if (!dicke_pairing && !variant_pairing) {
        throw std::invalid_argument("trapping_fidelity: trap kind does not match model");
    }

    const Eigen::MatrixXcd h = build_composite_hamiltonian(params, env, photon_levels);

    // Qubit factor in the (ee, eg, ge, gg) product order.
    Eigen::VectorXcd qubit = Eigen::VectorXcd::Zero(4);
    if (trap.kind == TrapKind::singlet_pairs) {
        qubit(2) = kInvSqrt2;   // (|ge> - |eg>)/sqrt2
        qubit(1) = -kInvSqrt2;
    } else {
        qubit(0) = kInvSqrt2;   // (|ee> - |gg>)/sqrt2
        qubit(3) = -kInvSqrt2;
    }

    Eigen::VectorXcd field = trap.field_alpha != 0.0
                                 ? coherent_vector(photon_levels, trap.field_alpha)
                                 : fock_vector(photon_levels, trap.photon);
    Eigen::VectorXcd psi = kron_vec(field, qubit);

    auto occupations = [&](const std::vector<int>& given, std::size_t count) {
        std::vector<int> occ = given;
        occ.resize(count, 0);
        return occ;
    };
    const auto qocc = occupations(trap.qubit_mode_occupations, env.qubit_modes.size());
    const auto focc = occupations(trap.field_mode_occupations, env.field_modes.size());
    for (std::size_t j = 0; j < env.qubit_modes.size(); ++j) {
        psi = kron_vec(psi, fock_vector(env.qubit_modes[j].truncation, qocc[j]));
    }
    for (std::size_t j = 0; j < env.field_modes.size(); ++j) {
        psi = kron_vec(psi, fock_vector(env.field_modes[j].truncation, focc[j]));
    }

    int env_dim = 1;
    for (const auto& m : env.qubit_modes) env_dim *= m.truncation;
    for (const auto& m : env.field_modes) env_dim *= m.truncation;

    const auto states = evolve(h, psi, times);

    std::vector<FidelityPoint> out;
    out.reserve(times.size());
    for (std::size_t it = 0; it < times.size(); ++it) {
        const Eigen::VectorXcd& s = states[it];
        // rho_q[a,b] = sum_{f,e} psi[(f*4+a)*E + e] conj(psi[(f*4+b)*E + e])
        Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
        Eigen::VectorXd field_pop = Eigen::VectorXd::Zero(photon_levels);
        for (int f = 0; f < photon_levels; ++f) {
            for (int a = 0; a < 4; ++a) {
                const Eigen::Index base_a =
                    (static_cast<Eigen::Index>(f) * 4 + a) * env_dim;
                field_pop(f) += s.segment(base_a, env_dim).squaredNorm();
                for (int b = 0; b < 4; ++b) {
                    const Eigen::Index base_b =
                        (static_cast<Eigen::Index>(f) * 4 + b) * env_dim;
                    // <a| rho |b> = sum_e psi_a conj(psi_b); Eigen dot
                    // conjugates its first argument.
                    rho(a, b) +=
                        s.segment(base_b, env_dim).dot(s.segment(base_a, env_dim));
                }
            }
        }
        FidelityPoint p;
        p.t = times[it];
        p.qubit_fidelity = (qubit.adjoint() * rho * qubit)(0).real();
        for (int f = 0; f < photon_levels; ++f) p.field_mean_n += f * field_pop(f);
        p.qubit_purity = (rho * rho).trace().real();
        out.push_back(p);
    }
    return out;
}

Eigen::VectorXcd multiqubit_trap_state(int n_qubits, TrapKind kind,
                                       const Matching& matching, int photon,
                                       int photon_levels) {
    validate_matching(matching, n_qubits);
    const int qdim = 1 << n_qubits;
    Eigen::VectorXcd qubit = Eigen::VectorXcd::Zero(qdim);
    // Bit value 0 = |e>, 1 = |g>, qubit 0 is the most significant factor.
    for (int s = 0; s < qdim; ++s) {
        double amp = 1.0;
        for (auto [p, q] : matching) {
            const int bp = (s >> (n_qubits - 1 - p)) & 1;
            const int bq = (s >> (n_qubits - 1 - q)) & 1;
            double f;
            if (kind == TrapKind::singlet_pairs) {
                f = (bp == 1 && bq == 0) ? kInvSqrt2 : (bp == 0 && bq == 1) ? -kInvSqrt2 : 0.0;
            } else {
                f = (bp == 0 && bq == 0) ? kInvSqrt2 : (bp == 1 && bq == 1) ? -kInvSqrt2 : 0.0;
            }
            amp *= f;
            if (amp == 0.0) break;
        }
        qubit(s) = amp;
    }
    return kron_vec(fock_vector(photon_levels, photon), qubit);
}

MultiqubitTrapReport verify_trap_vector(const Eigen::VectorXcd& state, int n_qubits,
                                        const ModelParams& params,
                                        const Matching& matching, int photon,
                                        int photon_levels) {
    check_unit_norm(state, "verify_trap_vector");
    const Eigen::MatrixXcd h =
        build_dense_hamiltonian(params, photon_levels, n_qubits, matching);

    MultiqubitTrapReport report;
    // Dipole terms over the matching shift the eigenvalue: each pair factor
    // is an eigenvector of s_j s_j with -1/4 per axis (singlet) or
    // (-1/4, +1/4, +1/4) for axes (x, y, z) of the Phi- factor.
    const double pairs = static_cast<double>(matching.size());
    const double shift =
        params.model == Model::dicke
            ? -(params.dipole[0] + params.dipole[1] + params.dipole[2]) / 4.0 * pairs
            : -(params.dipole[0] - params.dipole[1] - params.dipole[2]) / 4.0 * pairs;
    report.eigenvalue = params.omega * photon + shift;
    report.eigen_residual = (h * state - report.eigenvalue * state).norm();

    for (int axis = 0; axis < 3; ++axis) {
        const Eigen::MatrixXcd s_full =
            ops::kron(Eigen::MatrixXcd::Identity(photon_levels, photon_levels),
                      ops::collective_spin(axis, n_qubits));
        report.spin_norms[static_cast<std::size_t>(axis)] = (s_full * state).norm();
    }
    return report;
}

MultiqubitTrapReport verify_multiqubit_traps(int n_qubits, const ModelParams& params,
                                             const Matching& matching_in, int photon,
                                             int photon_levels) {
    if (n_qubits % 2 != 0 || n_qubits < 2 || n_qubits > 6) {
        throw std::invalid_argument("verify_multiqubit_traps: n_qubits must be even, 2..6");
    }
    const Matching matching =
        matching_in.empty() ? consecutive_matching(n_qubits) : matching_in;
    const TrapKind kind = params.model == Model::dicke ? TrapKind::singlet_pairs
                                                       : TrapKind::phi_minus_pairs;
    const Eigen::VectorXcd state =
        multiqubit_trap_state(n_qubits, kind, matching, photon, photon_levels);
    return verify_trap_vector(state, n_qubits, params, matching, photon, photon_levels);
}

}  // namespace dicke
