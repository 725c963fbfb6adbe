#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dicke/eigensolver.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/hamiltonian.hpp"
#include "dicke/recurrence.hpp"

using namespace dicke;

namespace {

ModelParams usc() {
    ModelParams p;
    p.g = 1.1;
    return p;
}

}  // namespace

TEST_CASE("singlet eigenpairs: eigenvalue, parity, residual") {
    const SingletEigenpair a = singlet_eigenpair(3, usc());
    CHECK(a.eigenvalue == doctest::Approx(3.0));
    CHECK(a.parity == Parity::positive);
    CHECK(a.residual <= 1e-12);

    const SingletEigenpair b = singlet_eigenpair(0, usc());
    CHECK(b.eigenvalue == doctest::Approx(0.0));
    CHECK(b.parity == Parity::negative);
    CHECK(b.residual <= 1e-12);

    ModelParams with_dipole = usc();
    with_dipole.dipole = {0.1, 0.2, 0.3};
    const SingletEigenpair c = singlet_eigenpair(2, with_dipole);
    CHECK(c.eigenvalue == doctest::Approx(2.0 - 0.15).epsilon(1e-14));
    CHECK(c.parity == Parity::negative);
    CHECK(c.residual <= 1e-12);
}

TEST_CASE("singlet eigenpair rejections") {
    ModelParams variant = usc();
    variant.model = Model::variant;
    CHECK_THROWS_AS(singlet_eigenpair(1, variant), std::invalid_argument);
    // Verification basis too small to contain the rung.
    CHECK_THROWS_AS(singlet_eigenpair(9, usc(), 8), std::invalid_argument);
}

TEST_CASE("variant trapped eigenpair and operator actions") {
    ModelParams p = usc();
    p.model = Model::variant;
    const SingletEigenpair a = variant_trapped_eigenpair(1, p);
    CHECK(a.eigenvalue == doctest::Approx(1.0));
    CHECK(a.parity == Parity::negative);
    CHECK(a.residual <= 1e-12);

    const SingletEigenpair b = variant_trapped_eigenpair(2, p);
    CHECK(b.parity == Parity::positive);

    // Dipole shift of the Phi- branch: -(dx - dy - dz)/4.
    ModelParams pd = p;
    pd.dipole = {0.1, 0.2, 0.3};
    const SingletEigenpair c = variant_trapped_eigenpair(2, pd);
    CHECK(c.eigenvalue == doctest::Approx(2.0 + 0.1).epsilon(1e-13));
    CHECK(c.residual <= 1e-12);

    // Bell-state operator actions on the bare (ee, eg, ge, gg) order.
    Eigen::Vector4cd phi_minus, phi_plus, psi_plus;
    const double s = 1.0 / std::sqrt(2.0);
    phi_minus << -s, 0, 0, s;
    phi_plus << s, 0, 0, s;
    psi_plus << 0, s, s, 0;
    const Eigen::MatrixXcd sx = ops::collective_spin(0, 2);
    const Eigen::MatrixXcd sy = ops::collective_spin(1, 2);
    const Eigen::MatrixXcd sz = ops::collective_spin(2, 2);
    const Eigen::MatrixXcd dz =
        ops::qubit_operator(ops::sz(), 0, 2) - ops::qubit_operator(ops::sz(), 1, 2);
    CHECK((dz * phi_minus).norm() <= 1e-15);
    CHECK((sx * phi_minus).norm() <= 1e-15);
    const std::complex<double> minus_i(0.0, -1.0);
    CHECK((sy * phi_minus - minus_i * psi_plus).norm() <= 1e-15);
    CHECK((sz * phi_minus + phi_plus).norm() <= 1e-15);
}

TEST_CASE("alpha coefficients: boundary zero and quoted closed form") {
    const RecurrenceCoefficients plus(Parity::positive, 0.0, usc(), 40);
    const RecurrenceCoefficients minus(Parity::negative, 0.0, usc(), 40);
    CHECK(plus.alpha(0) == 0.0);
    CHECK(minus.alpha(0) == 0.0);

    // alpha_1^(+)(0) = g^2 sqrt(2*3) (2w - 0) / ((2w)^2 - w0^2), evaluated
    // independently from the closed form.
    const double g2 = 1.1 * 1.1;
    const double expected = g2 * std::sqrt(6.0) * 2.0 / (4.0 - 1.0);
    CHECK(plus.alpha(1) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(expected == doctest::Approx(1.9759217258450967).epsilon(1e-12));
}

TEST_CASE("beta at j=0 equals the j->0+ limit of the factored form") {
    const double lambda = 0.5, g2 = 1.1 * 1.1, w = 1.0, w0 = 1.0;
    const RecurrenceCoefficients plus(Parity::positive, lambda, usc(), 40);

    auto k = [&](double x) { return (x - lambda) / ((x - lambda) * (x - lambda) - w0 * w0); };
    auto alpha_plus = [&](double j) {
        return g2 * std::sqrt(2.0 * j * (2.0 * j + 1.0)) * k(2.0 * j * w);
    };
    // Factored form: lambda - (2j+1)w + sqrt((2j+1)/2j) a_j + sqrt((2j+2)/(2j+3)) a_{j+1}.
    auto beta_factored = [&](double j) {
        return lambda - (2.0 * j + 1.0) * w +
               std::sqrt((2.0 * j + 1.0) / (2.0 * j)) * alpha_plus(j) +
               std::sqrt((2.0 * j + 2.0) / (2.0 * j + 3.0)) * alpha_plus(j + 1.0);
    };
    CHECK(plus.beta(0) == doctest::Approx(beta_factored(1e-9)).epsilon(1e-7));
    CHECK(plus.beta(0) == doctest::Approx(3.2106666666666666).epsilon(1e-12));
    // Away from j=0 the combined and factored forms agree to roundoff.
    for (int j = 1; j < 10; ++j) {
        CHECK(plus.beta(j) ==
              doctest::Approx(beta_factored(static_cast<double>(j))).epsilon(1e-12));
    }
}

TEST_CASE("pole proximity is flagged") {
    // Positive parity poles sit at 2j w +/- w0 = odd integers on resonance.
    const RecurrenceCoefficients at_pole(Parity::positive, 3.0 + 1e-8, usc(), 40);
    CHECK(at_pole.pole_flagged());
    const RecurrenceCoefficients off_pole(Parity::positive, 3.4, usc(), 40);
    CHECK_FALSE(off_pole.pole_flagged());
}

TEST_CASE("converged eigenvectors satisfy the recurrence in both parities") {
    for (const Parity parity : {Parity::positive, Parity::negative}) {
        ConvergeOptions opts;
        opts.s_start = 320;
        const ConvergedSpectrum c = converge(usc(), parity, 60, opts);
        REQUIRE(c.converged);
        const auto basis = c.basis();
        int checked = 0;
        for (int n = 0; n < c.n_converged; ++n) {
            const ResidualReport r = recurrence_residual(
                c.spectrum.eigenvectors.col(n), c.spectrum.eigenvalues(n), parity,
                usc(), basis);
            if (r.status == RecurrenceStatus::singlet_input) continue;
            if (r.status == RecurrenceStatus::pole_proximate) continue;
            REQUIRE(r.status == RecurrenceStatus::ok);
            CHECK(r.residual <= 1e-8);
            ++checked;
        }
        CHECK(checked >= 40);
    }
}

TEST_CASE("perturbing the eigenvalue inflates the residual tenfold") {
    ConvergeOptions opts;
    opts.s_start = 320;
    const ConvergedSpectrum c = converge(usc(), Parity::positive, 40, opts);
    const auto basis = c.basis();
    int compared = 0;
    for (int n = 0; n < 40; ++n) {
        const Eigen::VectorXd v = c.spectrum.eigenvectors.col(n);
        const double lambda = c.spectrum.eigenvalues(n);
        const ResidualReport base = recurrence_residual(v, lambda, Parity::positive,
                                                        usc(), basis);
        if (base.status != RecurrenceStatus::ok) continue;
        const ResidualReport bumped = recurrence_residual(v, lambda + 0.01,
                                                          Parity::positive, usc(), basis);
        if (bumped.status != RecurrenceStatus::ok) continue;
        CHECK(bumped.residual >= 10.0 * base.residual);
        ++compared;
    }
    CHECK(compared >= 20);
}

TEST_CASE("singlet input and g = 0 are signalled, not computed") {
    const auto basis = ParityBasis::enumerate(Parity::positive, 16);
    Eigen::VectorXd singlet = Eigen::VectorXd::Zero(16);
    const double s = 1.0 / std::sqrt(2.0);
    singlet(basis.index_of({1, QubitLabel::ge})) = s;
    singlet(basis.index_of({1, QubitLabel::eg})) = -s;
    CHECK(recurrence_residual(singlet, 1.0, Parity::positive, usc(), basis).status ==
          RecurrenceStatus::singlet_input);

    ModelParams off;
    off.g = 0.0;
    Eigen::VectorXd psi_plus = Eigen::VectorXd::Zero(16);
    psi_plus(basis.index_of({1, QubitLabel::ge})) = s;
    psi_plus(basis.index_of({1, QubitLabel::eg})) = s;
    CHECK(recurrence_residual(psi_plus, 1.0, Parity::positive, off, basis).status ==
          RecurrenceStatus::coupling_off);
}

TEST_CASE("f1 reconstruction recovers converged eigenvectors") {
    for (const Parity parity : {Parity::positive, Parity::negative}) {
        ConvergeOptions opts;
        opts.s_start = 320;
        const ConvergedSpectrum c = converge(usc(), parity, 40, opts);
        const auto basis = c.basis();
        int reconstructed = 0;
        for (int n = 0; n < c.n_converged; ++n) {
            const Eigen::VectorXd v = c.spectrum.eigenvectors.col(n);
            const double lambda = c.spectrum.eigenvalues(n);
            const ResidualReport r =
                recurrence_residual(v, lambda, parity, usc(), basis);
            if (r.status != RecurrenceStatus::ok) continue;
            const Eigen::VectorXd f1 = extract_f1(v, basis);
            const Eigen::VectorXd rec = reconstruct_from_f1(f1, lambda, usc(), basis);
            CHECK(std::abs(rec.dot(v)) >= 1.0 - 1e-8);
            ++reconstructed;
        }
        CHECK(reconstructed >= 25);
    }
}

TEST_CASE("reconstruction decouples as g -> 0") {
    const auto basis = ParityBasis::enumerate(Parity::positive, 16);
    ModelParams off;
    off.g = 0.0;
    Eigen::VectorXd f1 = Eigen::VectorXd::Zero(basis.rung_count());
    f1(0) = 1.0;
    // lambda = w: the bare Psi+ level; f0 and f2 vanish with g.
    const Eigen::VectorXd rec = reconstruct_from_f1(f1, 1.0, off, basis);
    for (int j = 0; j < basis.rung_count(); ++j) {
        CHECK(rec(basis.index_of({2 * j, QubitLabel::ee})) == 0.0);
        CHECK(rec(basis.index_of({2 * j, QubitLabel::gg})) == 0.0);
    }
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(rec(basis.index_of({1, QubitLabel::ge})) == doctest::Approx(s));
    CHECK(rec(basis.index_of({1, QubitLabel::eg})) == doctest::Approx(s));
}

TEST_CASE("Psi+ coefficients decay beyond the classical support") {
    ConvergeOptions opts;
    opts.s_start = 320;
    const ConvergedSpectrum c = converge(usc(), Parity::positive, 20, opts);
    const auto basis = c.basis();
    for (int n = 0; n < 20; ++n) {
        const Eigen::VectorXd f1 = extract_f1(c.spectrum.eigenvectors.col(n), basis);
        const int rungs = static_cast<int>(f1.size());
        const double head = f1.head(rungs / 2).cwiseAbs().maxCoeff();
        const double tail = f1.tail(rungs / 4).cwiseAbs().maxCoeff();
        CHECK(tail <= 1e-10 * std::max(head, 1e-30));
    }
}

TEST_CASE("driving annihilates the singlet exactly") {
    Eigen::Vector4cd psi_minus;
    const double s = 1.0 / std::sqrt(2.0);
    psi_minus << 0, -s, s, 0;  // (|ge> - |eg>)/sqrt2 on (ee, eg, ge, gg)
    const Eigen::MatrixXcd drive = 0.7 * ops::collective_spin(0, 2) +
                                   (-1.3) * ops::collective_spin(1, 2);
    CHECK((drive * psi_minus).norm() == 0.0);
    const Eigen::MatrixXcd sz = ops::collective_spin(2, 2);
    CHECK((sz * psi_minus).norm() == 0.0);
}

TEST_CASE("every analytic singlet appears in the numerical spectrum") {
    ModelParams p = usc();
    p.dipole = {0.1, 0.2, 0.3};
    ConvergeOptions opts;
    opts.s_start = 240;
    const ConvergedSpectrum c = converge(p, Parity::positive, 60, opts);
    REQUIRE(c.converged);
    const auto basis = c.basis();
    const double shift = p.dipole_sum() / 4.0;
    int found = 0;
    for (int n = 1; n <= 25; n += 2) {  // odd photon numbers, positive parity
        const double target = p.omega * n - shift;
        bool matched = false;
        for (int i = 0; i < c.n_converged; ++i) {
            if (std::abs(c.spectrum.eigenvalues(i) - target) <= 1e-10) {
                const XState x = reduce_to_qubits(c.spectrum.eigenvectors.col(i), basis);
                CHECK(x.r_sing >= 1.0 - 1e-10);
                matched = true;
                break;
            }
        }
        CHECK(matched);
        found += matched ? 1 : 0;
    }
    CHECK(found == 13);
}
