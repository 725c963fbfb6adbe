#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dicke/eigensolver.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/hamiltonian.hpp"

using namespace dicke;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Eigen::VectorXd unit_vector(const ParityBasis& basis, int photon, QubitLabel label) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.size());
    v(basis.index_of({photon, label})) = 1.0;
    return v;
}

// Random valid X-state; r_eg gets a random phase, the rest stays real.
XState random_x_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double w_ee = u(rng), w_psi = u(rng), w_gg = u(rng);
    const double total = w_ee + w_psi + w_gg;
    XState x;
    x.r_ee = w_ee / total;
    x.r_gg = w_gg / total;
    x.r_psi = 0.5 * w_psi / total;
    const double mag = u(rng) * std::sqrt(x.r_ee * x.r_gg);
    const double phase = 2.0 * M_PI * u(rng);
    x.r_eg = std::polar(mag, phase);
    return x;
}

Eigen::Matrix4cd werner(double p) {
    Eigen::Vector4cd psi_minus;
    psi_minus << 0.0, kInvSqrt2, -kInvSqrt2, 0.0;  // (|eg> - |ge>)/sqrt2
    return p * psi_minus * psi_minus.adjoint() +
           (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
}

}  // namespace

TEST_CASE("pure singlet reduces to r_sing = 1") {
    const auto basis = ParityBasis::enumerate(Parity::positive, 16);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
    v(basis.index_of({5, QubitLabel::ge})) = kInvSqrt2;
    v(basis.index_of({5, QubitLabel::eg})) = -kInvSqrt2;
    const XState x = reduce_to_qubits(v, basis);
    CHECK(x.r_sing == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x.r_ee == 0.0);
    CHECK(x.r_gg == 0.0);
    CHECK(x.r_psi == doctest::Approx(0.0));
    CHECK(std::abs(x.r_eg) == 0.0);
}

TEST_CASE("product and Bell reductions") {
    const auto basis = ParityBasis::enumerate(Parity::positive, 16);
    const XState ee = reduce_to_qubits(unit_vector(basis, 0, QubitLabel::ee), basis);
    CHECK(ee.r_ee == doctest::Approx(1.0));

    Eigen::VectorXd bell = Eigen::VectorXd::Zero(16);
    bell(basis.index_of({0, QubitLabel::ee})) = kInvSqrt2;
    bell(basis.index_of({0, QubitLabel::gg})) = kInvSqrt2;
    const XState phi = reduce_to_qubits(bell, basis);
    CHECK(phi.r_ee == doctest::Approx(0.5));
    CHECK(phi.r_gg == doctest::Approx(0.5));
    CHECK(phi.r_eg.real() == doctest::Approx(0.5));
}

TEST_CASE("non-normalized input is rejected") {
    const auto basis = ParityBasis::enumerate(Parity::positive, 8);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(8);
    v(0) = 1.1;
    CHECK_THROWS_AS(reduce_to_qubits(v, basis), std::invalid_argument);
}

TEST_CASE("closed-form concurrence on the defining cases") {
    XState bell_psi;
    bell_psi.r_psi = 0.5;
    CHECK(concurrence(bell_psi) == doctest::Approx(1.0));

    XState product;
    product.r_ee = 1.0;
    CHECK(concurrence(product) == doctest::Approx(0.0));
}

TEST_CASE("closed form matches the structure-free evaluation") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const XState x = random_x_state(rng);
        const double closed = concurrence(x);
        const double brute = concurrence_bruteforce(x.to_density_matrix());
        CHECK(std::abs(closed - brute) <= 1e-12);
    }
}

TEST_CASE("brute force on Bell, mixed, and Werner states") {
    Eigen::Vector4cd psi_minus;
    psi_minus << 0.0, kInvSqrt2, -kInvSqrt2, 0.0;
    CHECK(concurrence_bruteforce(psi_minus * psi_minus.adjoint()) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK(concurrence_bruteforce(0.25 * Eigen::Matrix4cd::Identity()) ==
          doctest::Approx(0.0));

    // Werner state: C = max(0, (3p-1)/2).
    CHECK(concurrence_bruteforce(werner(0.5)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(concurrence_bruteforce(werner(1.0 / 3.0)) == doctest::Approx(0.0));
    CHECK(concurrence_bruteforce(werner(0.9)) ==
          doctest::Approx(0.85).epsilon(1e-12));
}

TEST_CASE("invalid density matrices are rejected") {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity();  // trace 4
    CHECK_THROWS_AS(concurrence_bruteforce(rho), std::invalid_argument);
    Eigen::Matrix4cd neg = Eigen::Matrix4cd::Zero();
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(concurrence_bruteforce(neg), std::invalid_argument);
}

TEST_CASE("mutual information of the reference states") {
    Eigen::Vector4cd phi_minus;
    phi_minus << -kInvSqrt2, 0.0, 0.0, kInvSqrt2;  // (|gg> - |ee>)/sqrt2
    CHECK(mutual_information(Eigen::Matrix4cd(phi_minus * phi_minus.adjoint())) ==
          doctest::Approx(2.0).epsilon(1e-12));

    Eigen::Matrix4cd gg = Eigen::Matrix4cd::Zero();
    gg(3, 3) = 1.0;
    CHECK(mutual_information(gg) == doctest::Approx(0.0));

    Eigen::Matrix4cd classical = Eigen::Matrix4cd::Zero();
    classical(0, 0) = 0.5;
    classical(3, 3) = 0.5;
    CHECK(mutual_information(classical) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mutual information stays within [0, 2] on random X states") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const XState x = random_x_state(rng);
        const double mi = mutual_information(x);
        CHECK(mi >= -1e-12);
        CHECK(mi <= 2.0 + 1e-12);
    }
}

TEST_CASE("Mandel Q of Fock and two-level photon distributions") {
    const auto basis = ParityBasis::enumerate(Parity::positive, 16);
    // Fock component n = 2 only: zero variance, Q = -1.
    const auto q_fock = mandel_q(unit_vector(basis, 2, QubitLabel::ee), basis);
    REQUIRE(q_fock.has_value());
    CHECK(*q_fock == doctest::Approx(-1.0));

    // Equal mixture of photon 0 and 2: <n> = 1, <n^2> = 2, Q = 0.
    Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
    v(basis.index_of({0, QubitLabel::ee})) = kInvSqrt2;
    v(basis.index_of({2, QubitLabel::ee})) = kInvSqrt2;
    const auto q_mix = mandel_q(v, basis);
    REQUIRE(q_mix.has_value());
    CHECK(*q_mix == doctest::Approx(0.0));

    // Vacuum-only state: undefined.
    CHECK_FALSE(mandel_q(unit_vector(basis, 0, QubitLabel::gg), basis).has_value());
}

TEST_CASE("triplet eigenstates have vanishing transverse spin") {
    ModelParams p;
    p.g = 1.1;
    const ConvergedSpectrum c = converge(p, Parity::positive, 20);
    const auto basis = c.basis();
    const Eigen::MatrixXcd sx_full = ops::collective_spin(0, 2);
    const Eigen::MatrixXcd sy_full = ops::collective_spin(1, 2);
    for (int n = 0; n < 20; ++n) {
        const XState x = reduce_to_qubits(c.spectrum.eigenvectors.col(n), basis);
        const Eigen::Matrix4cd rho = x.to_density_matrix();
        CHECK(std::abs((rho * sx_full).trace()) <= 1e-12);
        CHECK(std::abs((rho * sy_full).trace()) <= 1e-12);
    }
}

TEST_CASE("XState invariants are enforced") {
    XState bad;
    bad.r_ee = 0.6;
    bad.r_gg = 0.4;
    bad.r_eg = 0.6;  // exceeds sqrt(r_ee r_gg)
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    XState off_trace;
    off_trace.r_ee = 0.9;
    CHECK_THROWS_AS(off_trace.validate(), std::invalid_argument);
    CHECK_THROWS_AS(concurrence(off_trace), std::invalid_argument);
}
