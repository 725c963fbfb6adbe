#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "dicke/dynamics.hpp"
#include "dicke/eigensolver.hpp"
#include "dicke/hamiltonian.hpp"

using namespace dicke;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

std::vector<double> linspace(double t_max, int n) {
    std::vector<double> t;
    for (int i = 0; i < n; ++i) t.push_back(t_max * i / (n - 1));
    return t;
}

EnvironmentParams desk_environment() {
    EnvironmentParams env;
    env.qubit_modes.push_back({1.0, 1.0, 4});
    env.field_modes.push_back({1.0, 1.0, 4});
    return env;
}

}  // namespace

TEST_CASE("eigenvector initial states are stationary") {
    ModelParams p;
    p.g = 1.2;
    const MatrixXcd h = build_dense_hamiltonian(p, 4, 2);
    const ComplexSpectrum es = eigh(h);
    const VectorXcd psi0 = es.eigenvectors.col(3);
    const auto states = evolve(h, psi0, linspace(10.0, 11));
    for (const auto& s : states) {
        CHECK(std::abs(std::abs(psi0.dot(s)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("zero Hamiltonian is the identity evolution") {
    const MatrixXcd h = MatrixXcd::Zero(6, 6);
    VectorXcd psi0 = VectorXcd::Zero(6);
    psi0(2) = 1.0;
    const auto states = evolve(h, psi0, {0.0, 1.7, 42.0});
    for (const auto& s : states) CHECK((s - psi0).norm() <= 1e-14);
}

TEST_CASE("two-level dynamics matches the closed-form oscillation") {
    // H = (D/2) sz_pauli + (O/2) sx_pauli; P_flip(t) = O^2/W^2 sin^2(W t/2),
    // W = sqrt(O^2 + D^2).
    const double delta = 0.4, omega_r = 1.3;
    MatrixXcd h(2, 2);
    h << 0.5 * delta, 0.5 * omega_r, 0.5 * omega_r, -0.5 * delta;
    VectorXcd psi0(2);
    psi0 << 1.0, 0.0;
    const double w = std::hypot(delta, omega_r);
    for (double t : {0.3, 1.0, 2.5, 7.9}) {
        const auto states = evolve(h, psi0, {t});
        const double p_flip = std::norm(states[0](1));
        const double expected =
            (omega_r * omega_r) / (w * w) * std::pow(std::sin(0.5 * w * t), 2);
        CHECK(p_flip == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("evolution validates its inputs") {
    MatrixXcd h = MatrixXcd::Zero(2, 2);
    VectorXcd bad(2);
    bad << 1.0, 1.0;  // norm sqrt(2)
    CHECK_THROWS_AS(evolve(h, bad, {0.0}), std::invalid_argument);

    MatrixXcd nonherm(2, 2);
    nonherm << 0.0, 1.0, 0.0, 0.0;
    VectorXcd ok(2);
    ok << 1.0, 0.0;
    CHECK_THROWS_AS(evolve(nonherm, ok, {0.0}), std::invalid_argument);
}

TEST_CASE("Dicke singlet trap survives environment, driving, and dipole") {
    ModelParams p;
    p.g = 1.1;
    p.drive_x = 0.3;
    p.dipole = {0.1, 0.1, 0.1};
    TrappingState trap;
    trap.photon = 2;
    const auto trace =
        trapping_fidelity(p, desk_environment(), trap, linspace(50.0, 26), 8);
    for (const auto& pt : trace) {
        CHECK(pt.qubit_fidelity >= 1.0 - 1e-10);
        CHECK(pt.qubit_purity >= 1.0 - 1e-10);
    }
}

TEST_CASE("variant trap breaks under Sy driving") {
    ModelParams p;
    p.model = Model::variant;
    p.g = 1.1;
    p.drive_y = 0.3;
    TrappingState trap;
    trap.photon = 2;
    trap.kind = TrapKind::phi_minus_pairs;
    const auto trace =
        trapping_fidelity(p, desk_environment(), trap, linspace(50.0, 26), 8);
    double min_fidelity = 1.0;
    for (const auto& pt : trace) min_fidelity = std::min(min_fidelity, pt.qubit_fidelity);
    CHECK(min_fidelity < 1.0 - 1e-3);
}

TEST_CASE("variant trap holds without Sy/Sz terms") {
    ModelParams p;
    p.model = Model::variant;
    p.g = 1.1;
    p.drive_x = 0.25;
    TrappingState trap;
    trap.photon = 1;
    trap.kind = TrapKind::phi_minus_pairs;
    const auto trace =
        trapping_fidelity(p, desk_environment(), trap, linspace(50.0, 26), 8);
    for (const auto& pt : trace) CHECK(pt.qubit_fidelity >= 1.0 - 1e-10);
}

TEST_CASE("displaced field decoheres while the qubit factor stays trapped") {
    ModelParams p;
    p.g = 1.1;
    TrappingState trap;
    trap.field_alpha = 0.6;
    const auto trace =
        trapping_fidelity(p, desk_environment(), trap, linspace(30.0, 16), 8);
    double min_purity = 1.0;
    for (const auto& pt : trace) {
        CHECK(pt.qubit_fidelity >= 1.0 - 1e-10);
        min_purity = std::min(min_purity, pt.qubit_purity);
    }
    // The field leaks into the bath mode and back; the qubit pair does not.
    CHECK(min_purity >= 1.0 - 1e-10);
    bool field_moved = false;
    for (const auto& pt : trace) {
        if (std::abs(pt.field_mean_n - trace.front().field_mean_n) > 1e-3) {
            field_moved = true;
        }
    }
    CHECK(field_moved);
}

TEST_CASE("mismatched trap kind and model are rejected") {
    ModelParams p;
    TrappingState trap;
    trap.kind = TrapKind::phi_minus_pairs;
    CHECK_THROWS_AS(
        trapping_fidelity(p, desk_environment(), trap, linspace(1.0, 2), 4),
        std::invalid_argument);
}

TEST_CASE("two-qubit trap reduces to the singlet eigenpair") {
    ModelParams p;
    p.g = 1.7;
    const auto report = verify_multiqubit_traps(2, p, {}, 2, 6);
    CHECK(report.eigenvalue == doctest::Approx(2.0));
    CHECK(report.eigen_residual <= 1e-12);
    for (double n : report.spin_norms) CHECK(n <= 1e-14);
}

TEST_CASE("four-qubit paired singlets for every matching and superpositions") {
    ModelParams p;
    p.g = 2.0;
    const int levels = 4, photon = 1;
    const auto matchings = all_matchings(4);
    REQUIRE(matchings.size() == 3);
    std::vector<VectorXcd> states;
    for (const auto& m : matchings) {
        const auto report = verify_multiqubit_traps(4, p, m, photon, levels);
        CHECK(report.eigenvalue == doctest::Approx(1.0));
        CHECK(report.eigen_residual <= 1e-10);
        for (double n : report.spin_norms) CHECK(n <= 1e-12);
        states.push_back(
            multiqubit_trap_state(4, TrapKind::singlet_pairs, m, photon, levels));
    }
    // Any combination of the three matchings is still an eigenstate.
    VectorXcd combo = 0.6 * states[0] - 0.3 * states[1] + 0.45 * states[2];
    combo.normalize();
    const auto report = verify_trap_vector(combo, 4, p, matchings[0], photon, levels);
    CHECK(report.eigen_residual <= 1e-10);
    for (double n : report.spin_norms) CHECK(n <= 1e-12);
}

TEST_CASE("variant multiqubit traps are impervious to Sx only") {
    ModelParams p;
    p.model = Model::variant;
    p.g = 1.5;
    const auto report = verify_multiqubit_traps(4, p, {}, 1, 4);
    CHECK(report.eigenvalue == doctest::Approx(1.0));
    CHECK(report.eigen_residual <= 1e-10);
    CHECK(report.spin_norms[0] <= 1e-12);
    CHECK(report.spin_norms[1] > 0.1);
    CHECK(report.spin_norms[2] > 0.1);
}

TEST_CASE("six qubits: consecutive matching traps") {
    ModelParams p;
    p.g = 1.1;
    const auto report = verify_multiqubit_traps(6, p, {}, 1, 3);
    CHECK(report.eigen_residual <= 1e-10);
    for (double n : report.spin_norms) CHECK(n <= 1e-12);
}

TEST_CASE("odd qubit counts are rejected") {
    ModelParams p;
    CHECK_THROWS_AS(verify_multiqubit_traps(3, p, {}, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(verify_multiqubit_traps(8, p, {}, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(multiqubit_trap_state(4, TrapKind::singlet_pairs,
                                          {{0, 1}, {1, 2}}, 0, 2),
                    std::invalid_argument);
}

TEST_CASE("dipole shifts the multiqubit trap eigenvalue per pair") {
    ModelParams p;
    p.g = 1.3;
    p.dipole = {0.2, 0.1, 0.3};
    const auto d2 = verify_multiqubit_traps(2, p, {}, 1, 4);
    CHECK(d2.eigenvalue == doctest::Approx(1.0 - 0.6 / 4.0));
    CHECK(d2.eigen_residual <= 1e-12);
    const auto d4 = verify_multiqubit_traps(4, p, {}, 1, 4);
    CHECK(d4.eigenvalue == doctest::Approx(1.0 - 2.0 * 0.6 / 4.0));
    CHECK(d4.eigen_residual <= 1e-12);
}
