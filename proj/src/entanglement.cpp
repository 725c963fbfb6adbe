#include "dicke/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

constexpr double kSingletFallbackThreshold = 1e-14;

double clip_eigenvalue(double v, double tol) {
    if (v < -tol) {
        throw std::invalid_argument("density matrix eigenvalue " + std::to_string(v) +
                                    " below -" + std::to_string(tol));
    }
    return std::max(v, 0.0);
}

double entropy_base2(const Eigen::VectorXd& probs, double tol) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        const double p = clip_eigenvalue(probs(i), tol);
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

void check_density_matrix(const Eigen::Matrix4cd& rho, double tol = 1e-10) {
    if (!rho.allFinite()) {
        throw std::invalid_argument("density matrix has NaN/Inf entries");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("density matrix not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol) {
        throw std::invalid_argument("density matrix trace != 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument("density matrix not positive semidefinite");
    }
}

Eigen::Matrix4cd matrix_sqrt_psd(const Eigen::Matrix4cd& m, double tol = 1e-10) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
    Eigen::Vector4d d = es.eigenvalues();
    for (int i = 0; i < 4; ++i) d(i) = std::sqrt(clip_eigenvalue(d(i), tol));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

void XState::validate(double tol) const {
    const bool finite = std::isfinite(r_ee) && std::isfinite(r_psi) &&
                        std::isfinite(r_gg) && std::isfinite(r_sing) &&
                        std::isfinite(std::abs(r_eg)) && std::isfinite(std::abs(psi_sing));
    if (!finite) throw std::invalid_argument("XState: non-finite entry");
    if (std::abs(trace() - 1.0) > tol) {
        throw std::invalid_argument("XState: trace " + std::to_string(trace()) +
                                    " != 1");
    }
    if (r_psi < -tol || r_ee < -tol || r_gg < -tol || r_sing < -tol) {
        throw std::invalid_argument("XState: negative population");
    }
    if (r_ee * r_gg - std::norm(r_eg) < -tol) {
        throw std::invalid_argument("XState: |r_eg|^2 exceeds r_ee r_gg");
    }
    if (2.0 * r_psi * r_sing - std::norm(psi_sing) < -tol) {
        throw std::invalid_argument("XState: Psi+/Psi- coherence exceeds populations");
    }
}

Eigen::Matrix4cd XState::to_density_matrix() const {
    // Basis order (ee, eg, ge, gg).
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = r_ee;
    rho(3, 3) = r_gg;
    rho(0, 3) = r_eg;
    rho(3, 0) = std::conj(r_eg);
    const double p_plus = 2.0 * r_psi;
    const double p_minus = r_sing;
    const std::complex<double> chi = psi_sing;
    rho(2, 2) = 0.5 * (p_plus + p_minus) + chi.real();
    rho(1, 1) = 0.5 * (p_plus + p_minus) - chi.real();
    rho(2, 1) = 0.5 * (p_plus - p_minus) -
                std::complex<double>(0.0, 1.0) * chi.imag();
    rho(1, 2) = std::conj(rho(2, 1));
    return rho;
}

XState reduce_to_qubits(const Eigen::VectorXd& v, const ParityBasis& basis) {
    if (v.size() != basis.size()) {
        throw std::invalid_argument("reduce_to_qubits: vector/basis size mismatch");
    }
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("reduce_to_qubits: vector norm off by " +
                                    std::to_string(std::abs(norm - 1.0)));
    }
    XState x;
    for (int k = 0; k < basis.rung_count(); ++k) {
        double c_ee = 0, c_gg = 0, c_ge = 0, c_eg = 0;
        for (int slot = 0; slot < 4; ++slot) {
            const int idx = 4 * k + slot;
            const double c = v(idx) / norm;
            switch (basis.state(idx).label) {
                case QubitLabel::ee: c_ee = c; break;
                case QubitLabel::gg: c_gg = c; break;
                case QubitLabel::ge: c_ge = c; break;
                case QubitLabel::eg: c_eg = c; break;
            }
        }
        x.r_ee += c_ee * c_ee;
        x.r_gg += c_gg * c_gg;
        x.r_eg += c_ee * c_gg;
        const auto [c_plus, c_minus] = to_bell(c_ge, c_eg);
        x.r_psi += 0.5 * c_plus * c_plus;
        x.r_sing += c_minus * c_minus;
        x.psi_sing += c_plus * c_minus;
    }
    x.validate(1e-10);
    return x;
}

double concurrence(const XState& x) {
    x.validate(1e-10);
    if (x.r_sing > kSingletFallbackThreshold) {
        return concurrence_bruteforce(x.to_density_matrix());
    }
    // Closed form for the pure X case: eigenvalues of rho~ rho are
    // {4 r_psi^2, (sqrt(r_ee r_gg) +/- |r_eg|)^2, 0}.
    const double s = std::sqrt(std::max(0.0, x.r_ee * x.r_gg));
    const double r = std::abs(x.r_eg);
    std::array<double, 4> eps{2.0 * x.r_psi, s + r, std::abs(s - r), 0.0};
    std::sort(eps.begin(), eps.end(), std::greater<double>());
    return std::max(0.0, eps[0] - eps[1] - eps[2] - eps[3]);
}

double concurrence_bruteforce(const Eigen::Matrix4cd& rho) {
    check_density_matrix(rho);
    // Spin flip in the (ee, eg, ge, gg) basis: rho~ = (sy x sy) rho* (sy x sy).
    // The eps_i (square roots of the eigenvalues of rho~ rho) equal the
    // singular values of B = sqrt(rho) Y sqrt(rho*): B B^+ is similar to
    // rho~ rho. The SVD keeps the near-zero eps at machine-precision absolute
    // accuracy, which the eigenvalue-then-sqrt route does not.
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::Matrix4cd sq = matrix_sqrt_psd(rho);
    const Eigen::Matrix4cd b = sq * yy * sq.conjugate();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(b);
    const Eigen::Vector4d eps = svd.singularValues();  // descending
    return std::max(0.0, eps(0) - eps(1) - eps(2) - eps(3));
}

double mutual_information(const XState& x) {
    return mutual_information(x.to_density_matrix());
}

double mutual_information(const Eigen::Matrix4cd& rho) {
    check_density_matrix(rho);
    Eigen::Matrix2cd rho1 = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2cd rho2 = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                rho1(i, j) += rho(2 * i + k, 2 * j + k);
                rho2(i, j) += rho(2 * k + i, 2 * k + j);
            }
        }
    }
    const auto entropy = [](const Eigen::MatrixXcd& r) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r, Eigen::EigenvaluesOnly);
        return entropy_base2(es.eigenvalues(), 1e-10);
    };
    return entropy(rho1) + entropy(rho2) - entropy(rho);
}

std::optional<double> mandel_q(const Eigen::VectorXd& v, const ParityBasis& basis) {
    if (v.size() != basis.size()) {
        throw std::invalid_argument("mandel_q: vector/basis size mismatch");
    }
    const double norm2 = v.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-9) {
        throw std::invalid_argument("mandel_q: vector not unit norm");
    }
    double mean = 0.0, mean_sq = 0.0;
    for (int i = 0; i < basis.size(); ++i) {
        const double p = v(i) * v(i) / norm2;
        const double n = basis.state(i).photon;
        mean += n * p;
        mean_sq += n * n * p;
    }
    if (mean <= 0.0) return std::nullopt;  // vacuum-only state, Q undefined
    return (mean_sq - mean * mean) / mean - 1.0;
}

double sz_expectation(const XState& x) { return x.r_ee - x.r_gg; }

std::vector<StateDiagnostics> compute_diagnostics(const Spectrum& spectrum,
                                                  const ParityBasis& basis,
                                                  int n_states) {
    if (n_states < 0 || n_states > spectrum.dim()) {
        throw std::invalid_argument("compute_diagnostics: bad n_states");
    }
    std::vector<StateDiagnostics> rows;
    rows.reserve(static_cast<std::size_t>(n_states));
    for (int n = 0; n < n_states; ++n) {
        const Eigen::VectorXd v = spectrum.eigenvectors.col(n);
        const XState x = reduce_to_qubits(v, basis);
        StateDiagnostics d;
        d.index = n;
        d.eigenvalue = spectrum.eigenvalues(n);
        d.concurrence = concurrence(x);
        d.mutual_information = mutual_information(x);
        d.mandel_q = mandel_q(v, basis);
        d.sz = sz_expectation(x);
        d.singlet_weight = x.r_sing;
        d.phi_minus_weight = 0.5 * (x.r_ee + x.r_gg) - x.r_eg.real();
        rows.push_back(d);
    }
    return rows;
}

}  // namespace dicke
