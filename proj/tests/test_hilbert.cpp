#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "dicke/hilbert.hpp"

using namespace dicke;

TEST_CASE("smallest positive-parity rung") {
    const auto basis = ParityBasis::enumerate(Parity::positive, 4);
    REQUIRE(basis.size() == 4);
    CHECK(basis.state(0) == BasisState{0, QubitLabel::ee});
    CHECK(basis.state(1) == BasisState{0, QubitLabel::gg});
    CHECK(basis.state(2) == BasisState{1, QubitLabel::ge});
    CHECK(basis.state(3) == BasisState{1, QubitLabel::eg});
}

TEST_CASE("smallest negative-parity rung is the parity complement") {
    const auto basis = ParityBasis::enumerate(Parity::negative, 4);
    REQUIRE(basis.size() == 4);
    // Same four (photon, label) pairs with flipped photon parities; ordering
    // stays photon-ascending so the matrix stays block-tridiagonal.
    CHECK(basis.state(0) == BasisState{0, QubitLabel::ge});
    CHECK(basis.state(1) == BasisState{0, QubitLabel::eg});
    CHECK(basis.state(2) == BasisState{1, QubitLabel::ee});
    CHECK(basis.state(3) == BasisState{1, QubitLabel::gg});

    std::set<std::pair<int, int>> expected = {
        {1, static_cast<int>(QubitLabel::ee)}, {1, static_cast<int>(QubitLabel::gg)},
        {0, static_cast<int>(QubitLabel::ge)}, {0, static_cast<int>(QubitLabel::eg)}};
    std::set<std::pair<int, int>> got;
    for (const auto& s : basis.states()) got.insert({s.photon, static_cast<int>(s.label)});
    CHECK(got == expected);
}

TEST_CASE("size 4000 enumeration: photon coverage") {
    const auto basis = ParityBasis::enumerate(Parity::positive, 4000);
    // Oracle: direct enumeration of extremes per label family.
    int max_photon = -1, max_ee_gg = -1;
    for (const auto& s : basis.states()) {
        max_photon = std::max(max_photon, s.photon);
        if (s.label == QubitLabel::ee || s.label == QubitLabel::gg) {
            max_ee_gg = std::max(max_ee_gg, s.photon);
        }
    }
    CHECK(max_photon == 1999);
    CHECK(max_ee_gg == 1998);
    CHECK(basis.rung_count() == 1000);
}

TEST_CASE("index round trip is a bijection") {
    for (const Parity parity : {Parity::positive, Parity::negative}) {
        const auto basis = ParityBasis::enumerate(parity, 64);
        std::set<int> seen;
        for (int i = 0; i < basis.size(); ++i) {
            const int back = basis.index_of(basis.state(i));
            CHECK(back == i);
            seen.insert(back);
        }
        CHECK(static_cast<int>(seen.size()) == basis.size());
    }
}

TEST_CASE("positive and negative bases cover every pair exactly once") {
    const int size = 32;
    std::set<std::pair<int, int>> all;
    for (const Parity parity : {Parity::positive, Parity::negative}) {
        const auto basis = ParityBasis::enumerate(parity, size);
        for (const auto& s : basis.states()) {
            const bool inserted =
                all.insert({s.photon, static_cast<int>(s.label)}).second;
            CHECK(inserted);
        }
    }
    CHECK(static_cast<int>(all.size()) == 2 * size);
    // Every photon 0 .. size/2 - 1 appears with all four labels.
    for (int n = 0; n < size / 2; ++n) {
        for (int l = 0; l < 4; ++l) CHECK(all.count({n, l}) == 1);
    }
}

TEST_CASE("basis size must be a positive multiple of 4") {
    CHECK_THROWS_AS(ParityBasis::enumerate(Parity::positive, 0), std::invalid_argument);
    CHECK_THROWS_AS(ParityBasis::enumerate(Parity::positive, 3), std::invalid_argument);
    CHECK_THROWS_AS(ParityBasis::enumerate(Parity::positive, 6), std::invalid_argument);
    CHECK_THROWS_AS(ParityBasis::enumerate(Parity::negative, -4), std::invalid_argument);
}

TEST_CASE("to_bell maps the defining combinations") {
    const double s = 1.0 / std::sqrt(2.0);
    auto [p1, m1] = to_bell(s, s);
    CHECK(p1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m1 == doctest::Approx(0.0).epsilon(1e-15));

    auto [p2, m2] = to_bell(s, -s);
    CHECK(p2 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-15));

    auto [p3, m3] = to_bell(1.0, 0.0);
    CHECK(p3 == doctest::Approx(s).epsilon(1e-15));
    CHECK(m3 == doctest::Approx(s).epsilon(1e-15));
}

TEST_CASE("to_bell preserves the norm") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(rng), b = u(rng);
        const auto [p, m] = to_bell(a, b);
        CHECK(std::abs(p * p + m * m - (a * a + b * b)) <= 1e-14);
        const auto [ge, eg] = from_bell(p, m);
        CHECK(std::abs(ge - a) <= 1e-14);
        CHECK(std::abs(eg - b) <= 1e-14);
    }
}

TEST_CASE("bell matrix rows are orthonormal") {
    const Eigen::Matrix4d b = bell_matrix();
    const Eigen::Matrix4d gram = b * b.transpose();
    CHECK((gram - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
}
