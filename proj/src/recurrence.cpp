#include "dicke/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dicke/hamiltonian.hpp"

namespace dicke {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

int default_verify_size(int n) {
    const int rung = n / 2;
    return 4 * (rung + 2);
}

SingletEigenpair make_eigenpair(int n, const ModelParams& params, Parity parity,
                                double lambda, QubitLabel plus_label,
                                QubitLabel minus_label, int verify_size) {
    if (n < 0) throw std::invalid_argument("photon number must be >= 0");
    const int size = verify_size > 0 ? verify_size : default_verify_size(n);
    if (size < 4 * (n / 2 + 1)) {
        throw std::invalid_argument(
            "verification truncation does not contain photon rung " + std::to_string(n));
    }
    const auto basis = ParityBasis::enumerate(parity, size);
    SingletEigenpair pair;
    pair.photon = n;
    pair.eigenvalue = lambda;
    pair.parity = parity;
    pair.verify_size = size;
    pair.state = Eigen::VectorXd::Zero(size);
    pair.state(basis.index_of({n, plus_label})) = kInvSqrt2;
    pair.state(basis.index_of({n, minus_label})) = -kInvSqrt2;

    const auto h = build_parity_hamiltonian(params, basis);
    pair.residual = (h.multiply(pair.state) - lambda * pair.state).norm();
    const double tol = 1e-10 * std::max(1.0, std::abs(lambda));
    if (pair.residual > tol) {
        throw std::runtime_error("analytic eigenpair residual " +
                                 std::to_string(pair.residual) +
                                 " exceeds tolerance; build/inputs inconsistent");
    }
    return pair;
}

}  // namespace

SingletEigenpair singlet_eigenpair(int n, const ModelParams& params, int verify_size) {
    params.validate();
    if (params.model != Model::dicke) {
        throw std::invalid_argument(
            "singlet_eigenpair: defined for the Dicke model; "
            "use variant_trapped_eigenpair for the variant");
    }
    // |Psi-, n>; odd photon number lies in the positive parity subspace.
    const Parity parity = (n % 2 == 1) ? Parity::positive : Parity::negative;
    const double lambda = params.omega * n - params.dipole_sum() / 4.0;
    return make_eigenpair(n, params, parity, lambda, QubitLabel::ge, QubitLabel::eg,
                          verify_size);
}

SingletEigenpair variant_trapped_eigenpair(int n, const ModelParams& params,
                                           int verify_size) {
    params.validate();
    if (params.model != Model::variant) {
        throw std::invalid_argument("variant_trapped_eigenpair: model must be variant");
    }
    // |Phi-, n> = (|gg> - |ee>)/sqrt2 x |n>; even photon number is positive
    // parity. Each dipole axis maps Phi- to itself: x gives -1/4, y and z +1/4.
    const Parity parity = (n % 2 == 0) ? Parity::positive : Parity::negative;
    const double lambda = params.omega * n -
                          (params.dipole[0] - params.dipole[1] - params.dipole[2]) / 4.0;
    return make_eigenpair(n, params, parity, lambda, QubitLabel::gg, QubitLabel::ee,
                          verify_size);
}

RecurrenceCoefficients::RecurrenceCoefficients(Parity parity, double lambda,
                                               const ModelParams& params,
                                               int max_rung)
    : parity_(parity), lambda_(lambda), omega_(params.omega),
      omega0_(params.omega0), g2_(params.g * params.g), max_rung_(max_rung) {
    params.validate();
    if (!std::isfinite(lambda)) {
        throw std::invalid_argument("RecurrenceCoefficients: lambda must be finite");
    }
    if (max_rung < 1) {
        throw std::invalid_argument("RecurrenceCoefficients: max_rung must be >= 1");
    }
    // Denominators vanish at lambda = x +/- w0 with x on the photon grid of
    // the ee/gg rungs: even multiples of w for positive parity, odd for
    // negative. Flag candidates too close to any such pole.
    double dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= max_rung + 1; ++j) {
        const double x = parity_ == Parity::positive ? 2.0 * j * omega_
                                                     : (2.0 * j + 1.0) * omega_;
        dist = std::min(dist, std::abs(std::abs(x - lambda_) - omega0_));
    }
    pole_distance_ = dist;
    pole_flagged_ = dist < kPoleTolFactor * omega_;
}

double RecurrenceCoefficients::k_factor(double x) const {
    const double d = x - lambda_;
    return d / (d * d - omega0_ * omega0_);
}

double RecurrenceCoefficients::alpha(int j) const {
    if (j <= 0) return 0.0;  // sqrt(2j(2j+-1)) closes the boundary at j = 0
    if (parity_ == Parity::positive) {
        return g2_ * std::sqrt(2.0 * j * (2.0 * j + 1.0)) * k_factor(2.0 * j * omega_);
    }
    return g2_ * std::sqrt(2.0 * j * (2.0 * j - 1.0)) *
           k_factor((2.0 * j - 1.0) * omega_);
}

double RecurrenceCoefficients::beta(int j) const {
    if (j < 0) throw std::invalid_argument("beta: j must be >= 0");
    if (parity_ == Parity::positive) {
        // lambda - (2j+1)w + g^2 (2j+1) K(2jw) + g^2 (2j+2) K((2j+2)w); the
        // combined products stay finite at j = 0.
        return lambda_ - (2.0 * j + 1.0) * omega_ +
               g2_ * (2.0 * j + 1.0) * k_factor(2.0 * j * omega_) +
               g2_ * (2.0 * j + 2.0) * k_factor((2.0 * j + 2.0) * omega_);
    }
    double b = lambda_ - 2.0 * j * omega_ +
               g2_ * (2.0 * j + 1.0) * k_factor((2.0 * j + 1.0) * omega_);
    if (j > 0) b += g2_ * (2.0 * j) * k_factor((2.0 * j - 1.0) * omega_);
    return b;
}

RecurrenceCoefficients recurrence_coefficients(Parity parity, double lambda,
                                               const ModelParams& params,
                                               int max_rung) {
    return RecurrenceCoefficients(parity, lambda, params, max_rung);
}

Eigen::VectorXd extract_f1(const Eigen::VectorXd& v, const ParityBasis& basis) {
    if (v.size() != basis.size()) {
        throw std::invalid_argument("extract_f1: vector/basis size mismatch");
    }
    const int rungs = basis.rung_count();
    Eigen::VectorXd f1(rungs);
    for (int j = 0; j < rungs; ++j) {
        const int photon = basis.parity() == Parity::positive ? 2 * j + 1 : 2 * j;
        const double c_ge = v(basis.index_of({photon, QubitLabel::ge}));
        const double c_eg = v(basis.index_of({photon, QubitLabel::eg}));
        f1(j) = to_bell(c_ge, c_eg).first;
    }
    return f1;
}

ResidualReport recurrence_residual(const Eigen::VectorXd& v, double lambda,
                                   Parity parity, const ModelParams& params,
                                   const ParityBasis& basis) {
    ResidualReport report;
    if (params.g == 0.0) {
        report.status = RecurrenceStatus::coupling_off;
        return report;
    }
    const Eigen::VectorXd f1 = extract_f1(v, basis);
    const int rungs = static_cast<int>(f1.size());
    const double cmax = f1.cwiseAbs().maxCoeff();
    if (cmax < 1e-8 * v.norm()) {
        report.status = RecurrenceStatus::singlet_input;
        return report;
    }
    const RecurrenceCoefficients coeffs(parity, lambda, params, rungs);
    double worst = 0.0;
    for (int j = 0; j < rungs; ++j) {
        const double prev = j > 0 ? f1(j - 1) : 0.0;
        const double next = j + 1 < rungs ? f1(j + 1) : 0.0;
        const double r = coeffs.alpha(j) * prev + coeffs.beta(j) * f1(j) +
                         coeffs.alpha(j + 1) * next;
        worst = std::max(worst, std::abs(r));
    }
    report.residual = worst / cmax;
    report.status = coeffs.pole_flagged() ? RecurrenceStatus::pole_proximate
                                          : RecurrenceStatus::ok;
    return report;
}

Eigen::VectorXd reconstruct_from_f1(const Eigen::VectorXd& f1, double lambda,
                                    const ModelParams& params,
                                    const ParityBasis& basis) {
    params.validate();
    const int rungs = basis.rung_count();
    if (f1.size() != rungs) {
        throw std::invalid_argument("reconstruct_from_f1: f1 length must equal rung count");
    }
    const double w = params.omega, w0 = params.omega0;
    const double f1max = std::max(f1.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.size());

    for (int j = 0; j < rungs; ++j) {
        // Photon number carrying the ee/gg pair of rung j.
        const int n = basis.parity() == Parity::positive ? 2 * j : 2 * j + 1;
        // (a + a^+) f1 at photon n, with f1 living on the adjacent photons.
        double u = 0.0;
        if (basis.parity() == Parity::positive) {
            if (j > 0) u += std::sqrt(static_cast<double>(n)) * f1(j - 1);
            u += std::sqrt(n + 1.0) * f1(j);
        } else {
            u += std::sqrt(static_cast<double>(n)) * f1(j);
            if (j + 1 < rungs) u += std::sqrt(n + 1.0) * f1(j + 1);
        }
        const double d0 = w * n + w0 - lambda;  // ee denominator
        const double d2 = w * n - w0 - lambda;  // gg denominator
        const double tiny = kPoleTolFactor * w;
        const double scale = -params.g * kInvSqrt2;
        if (scale != 0.0 && (std::abs(d0) < tiny || std::abs(d2) < tiny) &&
            std::abs(u) > 1e-12 * f1max) {
            throw std::domain_error(
                "reconstruct_from_f1: denominator vanishes on occupied rung " +
                std::to_string(j));
        }
        const double f0 = (scale == 0.0 || std::abs(d0) < tiny) ? 0.0 : scale * u / d0;
        const double f2 = (scale == 0.0 || std::abs(d2) < tiny) ? 0.0 : scale * u / d2;
        v(basis.index_of({n, QubitLabel::ee})) = f0;
        v(basis.index_of({n, QubitLabel::gg})) = f2;

        const int m = basis.parity() == Parity::positive ? 2 * j + 1 : 2 * j;
        const auto [c_ge, c_eg] = from_bell(f1(j), 0.0);
        v(basis.index_of({m, QubitLabel::ge})) = c_ge;
        v(basis.index_of({m, QubitLabel::eg})) = c_eg;
    }
    const double norm = v.norm();
    if (norm == 0.0) {
        throw std::domain_error("reconstruct_from_f1: zero reconstruction");
    }
    return v / norm;
}

}  // namespace dicke
