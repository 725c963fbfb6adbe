#include "dicke/eigensolver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dicke/hamiltonian.hpp"

namespace dicke {

namespace {

// Largest-magnitude component made positive (first one on ties); keeps
// eigenvector files reproducible across runs and libraries.
void fix_signs(Eigen::MatrixXd& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index imax = 0;
        double amax = -1.0;
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double a = std::abs(v(r, c));
            if (a > amax) {
                amax = a;
                imax = r;
            }
        }
        if (v(imax, c) < 0.0) v.col(c) = -v.col(c);
    }
}

void fix_phases(Eigen::MatrixXcd& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index imax = 0;
        double amax = -1.0;
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double a = std::abs(v(r, c));
            if (a > amax) {
                amax = a;
                imax = r;
            }
        }
        if (amax > 0.0) {
            const std::complex<double> phase = v(imax, c) / std::abs(v(imax, c));
            v.col(c) *= std::conj(phase);
        }
    }
}

void check_lapack_info(int info, const char* routine) {
    if (info < 0) {
        throw std::invalid_argument(std::string(routine) + ": illegal argument " +
                                    std::to_string(-info));
    }
    if (info > 0) {
        throw std::runtime_error(std::string(routine) +
                                 " failed to converge (info=" + std::to_string(info) +
                                 ")");
    }
}

double spectral_scale(const Eigen::VectorXd& w) {
    if (w.size() == 0) return 1.0;
    return std::max(1.0, std::max(std::abs(w(0)), std::abs(w(w.size() - 1))));
}

void check_orthonormality(const Eigen::MatrixXd& v) {
    const Eigen::Index n = v.cols();
    // Full Gram check up to moderate sizes; random column sample beyond.
    if (n <= 1200) {
        const Eigen::MatrixXd gram = v.transpose() * v;
        const double err = (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
        if (err > 1e-12) {
            throw std::runtime_error("spectrum orthonormality violated: " +
                                     std::to_string(err));
        }
        return;
    }
    const Eigen::Index sample = 64;
    for (Eigen::Index s = 0; s < sample; ++s) {
        const Eigen::Index c = (s * 2654435761u) % n;
        const Eigen::VectorXd g = v.transpose() * v.col(c);
        double err = std::abs(g(c) - 1.0);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r != c) err = std::max(err, std::abs(g(r)));
        }
        if (err > 1e-12) {
            throw std::runtime_error("spectrum orthonormality violated: " +
                                     std::to_string(err));
        }
    }
}

}  // namespace

Spectrum eigh(const SymmetricBandedMatrix& m) {
    if (!m.all_finite()) {
        throw std::invalid_argument("eigh: banded matrix has NaN/Inf entries");
    }
    const int n = m.dim();
    const int kd = m.bandwidth();
    std::vector<double> ab(m.data(), m.data() + static_cast<std::size_t>(kd + 1) * n);
    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors.resize(n, n);
    const int info = LAPACKE_dsbevd(LAPACK_COL_MAJOR, 'V', 'L', n, kd, ab.data(),
                                    kd + 1, s.eigenvalues.data(),
                                    s.eigenvectors.data(), n);
    check_lapack_info(info, "dsbevd");
    fix_signs(s.eigenvectors);
    return s;
}

Spectrum eigh(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("eigh: matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("eigh: matrix has NaN/Inf entries");
    }
    const int n = static_cast<int>(m.rows());
    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors = m;
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                    s.eigenvectors.data(), n, s.eigenvalues.data());
    check_lapack_info(info, "dsyevd");
    fix_signs(s.eigenvectors);
    return s;
}

ComplexSpectrum eigh(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("eigh: matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("eigh: matrix has NaN/Inf entries");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: complex Hermitian decomposition failed");
    }
    ComplexSpectrum s;
    s.eigenvalues = solver.eigenvalues();
    s.eigenvectors = solver.eigenvectors();
    fix_phases(s.eigenvectors);
    return s;
}

void verify_spectrum(const SymmetricBandedMatrix& m, const Spectrum& s,
                     double residual_tol) {
    const double scale = spectral_scale(s.eigenvalues);
    for (int i = 0; i + 1 < s.dim(); ++i) {
        if (s.eigenvalues(i) > s.eigenvalues(i + 1)) {
            throw std::runtime_error("spectrum not ascending");
        }
    }
    for (int i = 0; i < s.dim(); ++i) {
        const Eigen::VectorXd r =
            m.multiply(s.eigenvectors.col(i)) - s.eigenvalues(i) * s.eigenvectors.col(i);
        if (r.norm() > residual_tol * scale) {
            throw std::runtime_error("residual too large for state " + std::to_string(i) +
                                     ": " + std::to_string(r.norm()));
        }
    }
    check_orthonormality(s.eigenvectors);
}

void verify_spectrum(const Eigen::MatrixXd& m, const Spectrum& s, double residual_tol) {
    const double scale = spectral_scale(s.eigenvalues);
    const Eigen::MatrixXd r =
        m * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal();
    const double worst = r.colwise().norm().maxCoeff();
    if (worst > residual_tol * scale) {
        throw std::runtime_error("residual too large: " + std::to_string(worst));
    }
    check_orthonormality(s.eigenvectors);
}

namespace {

struct StepErrors {
    std::vector<double> delta_lambda, delta_vector;
    std::vector<bool> degenerate;
};

// Compare spectra at S and S + 4; overlaps pad the smaller vector with zeros.
StepErrors compare_spectra(const Spectrum& a, const Spectrum& b, int n_states,
                           double omega) {
    StepErrors e;
    e.delta_lambda.resize(n_states);
    e.delta_vector.resize(n_states);
    e.degenerate.resize(n_states);
    const int na = a.dim();
    const double cluster_gap = 1e-9 * omega;
    for (int n = 0; n < n_states; ++n) {
        e.delta_lambda[n] = std::abs(a.eigenvalues(n) - b.eigenvalues(n));
        // Degenerate cluster in b around level n: pairwise overlap is
        // ill-defined there, so take the best match inside the cluster.
        int lo = n, hi = n;
        while (lo > 0 && b.eigenvalues(lo) - b.eigenvalues(lo - 1) < cluster_gap) --lo;
        while (hi + 1 < b.dim() && b.eigenvalues(hi + 1) - b.eigenvalues(hi) < cluster_gap)
            ++hi;
        double best = 0.0;
        for (int m = lo; m <= hi; ++m) {
            const double ov =
                std::abs(a.eigenvectors.col(n).dot(b.eigenvectors.col(m).head(na)));
            best = std::max(best, ov);
        }
        e.delta_vector[n] = std::max(0.0, 1.0 - best);
        e.degenerate[n] = (hi != lo);
    }
    return e;
}

int round_up_to_rung(int s) { return ((s + 3) / 4) * 4; }

}  // namespace

ConvergedSpectrum converge(const ModelParams& params, Parity parity, int n_states,
                           const ConvergeOptions& opts) {
    params.validate();
    if (n_states < 1) throw std::invalid_argument("converge: n_states must be >= 1");
    if (!(opts.tol_lambda > 0.0) || !(opts.tol_vector > 0.0)) {
        throw std::invalid_argument("converge: tolerances must be > 0");
    }
    // Default headroom is 4N; an explicit S_start may go as low as N (the
    // reference runs extract 2000 states from size-4000 truncations).
    int s = opts.s_start > 0 ? opts.s_start : 4 * n_states;
    if (s < n_states) {
        throw std::invalid_argument("converge: S_start must be >= n_states");
    }
    s = round_up_to_rung(s);
    const int step = round_up_to_rung(opts.s_step > 0 ? opts.s_step
                                                      : std::max(4, s / 4));
    if (opts.s_max < s) throw std::invalid_argument("converge: S_max < S_start");

    ConvergedSpectrum out;
    out.parity = parity;
    out.n_requested = n_states;
    while (true) {
        const auto basis_a = ParityBasis::enumerate(parity, s);
        const auto basis_b = ParityBasis::enumerate(parity, s + 4);
        Spectrum a = eigh(build_parity_hamiltonian(params, basis_a));
        Spectrum b = eigh(build_parity_hamiltonian(params, basis_b));
        StepErrors e = compare_spectra(a, b, n_states, params.omega);

        int prefix = 0;
        while (prefix < n_states && e.delta_lambda[prefix] <= opts.tol_lambda &&
               e.delta_vector[prefix] <= opts.tol_vector) {
            ++prefix;
        }
        out.spectrum = std::move(a);
        out.n_converged = prefix;
        out.delta_lambda = std::move(e.delta_lambda);
        out.delta_vector = std::move(e.delta_vector);
        out.degenerate_flag = std::move(e.degenerate);
        out.final_size = s;
        out.converged = (prefix == n_states);
        if (out.converged || s + step > opts.s_max) return out;
        s += step;
    }
}

}  // namespace dicke
