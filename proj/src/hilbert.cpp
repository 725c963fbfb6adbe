#include "dicke/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

bool label_on_even_photons(Parity parity, QubitLabel label) {
    const bool ee_gg = (label == QubitLabel::ee || label == QubitLabel::gg);
    return parity == Parity::positive ? ee_gg : !ee_gg;
}

}  // namespace

const char* to_string(QubitLabel l) {
    switch (l) {
        case QubitLabel::ee: return "ee";
        case QubitLabel::gg: return "gg";
        case QubitLabel::ge: return "ge";
        case QubitLabel::eg: return "eg";
    }
    return "?";
}

ParityBasis::ParityBasis(Parity parity, int size) : parity_(parity), size_(size) {
    states_.reserve(size);
    // Rung k covers photons (2k, 2k+1); the two labels living on even photons
    // come first so the ordering is photon-ascending.
    const QubitLabel even_a = parity == Parity::positive ? QubitLabel::ee : QubitLabel::ge;
    const QubitLabel even_b = parity == Parity::positive ? QubitLabel::gg : QubitLabel::eg;
    const QubitLabel odd_a = parity == Parity::positive ? QubitLabel::ge : QubitLabel::ee;
    const QubitLabel odd_b = parity == Parity::positive ? QubitLabel::eg : QubitLabel::gg;
    for (int k = 0; 4 * k < size; ++k) {
        states_.push_back({2 * k, even_a});
        states_.push_back({2 * k, even_b});
        states_.push_back({2 * k + 1, odd_a});
        states_.push_back({2 * k + 1, odd_b});
    }
}

ParityBasis ParityBasis::enumerate(Parity parity, int size) {
    if (size < 4 || size % 4 != 0) {
        throw std::invalid_argument(
            "ParityBasis: size must be a positive multiple of 4 (whole rungs), got " +
            std::to_string(size));
    }
    return ParityBasis(parity, size);
}

const BasisState& ParityBasis::state(int index) const {
    if (index < 0 || index >= size_) {
        throw std::out_of_range("ParityBasis: index " + std::to_string(index) +
                                " out of range [0, " + std::to_string(size_) + ")");
    }
    return states_[static_cast<std::size_t>(index)];
}

int ParityBasis::index_of(const BasisState& s) const {
    if (s.photon < 0 || s.photon > max_photon()) return -1;
    const bool even = (s.photon % 2 == 0);
    if (even != label_on_even_photons(parity_, s.label)) return -1;
    const int rung = s.photon / 2;
    int slot;
    if (parity_ == Parity::positive) {
        switch (s.label) {
            case QubitLabel::ee: slot = 0; break;
            case QubitLabel::gg: slot = 1; break;
            case QubitLabel::ge: slot = 2; break;
            default: slot = 3; break;
        }
    } else {
        switch (s.label) {
            case QubitLabel::ge: slot = 0; break;
            case QubitLabel::eg: slot = 1; break;
            case QubitLabel::ee: slot = 2; break;
            default: slot = 3; break;
        }
    }
    return 4 * rung + slot;
}

std::pair<double, double> to_bell(double c_ge, double c_eg) {
    if (!std::isfinite(c_ge) || !std::isfinite(c_eg)) {
        throw std::invalid_argument("to_bell: amplitudes must be finite");
    }
    return {(c_ge + c_eg) * kInvSqrt2, (c_ge - c_eg) * kInvSqrt2};
}

std::pair<std::complex<double>, std::complex<double>>
to_bell(std::complex<double> c_ge, std::complex<double> c_eg) {
    return {(c_ge + c_eg) * kInvSqrt2, (c_ge - c_eg) * kInvSqrt2};
}

std::pair<double, double> from_bell(double c_plus, double c_minus) {
    return {(c_plus + c_minus) * kInvSqrt2, (c_plus - c_minus) * kInvSqrt2};
}

Eigen::Matrix4d bell_matrix() {
    // Bare columns ordered (ee, eg, ge, gg); rows (Phi+, Phi-, Psi+, Psi-).
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = kInvSqrt2;  m(0, 3) = kInvSqrt2;    // Phi+ = (gg + ee)/sqrt2
    m(1, 0) = -kInvSqrt2; m(1, 3) = kInvSqrt2;    // Phi- = (gg - ee)/sqrt2
    m(2, 1) = kInvSqrt2;  m(2, 2) = kInvSqrt2;    // Psi+ = (ge + eg)/sqrt2
    m(3, 1) = -kInvSqrt2; m(3, 2) = kInvSqrt2;    // Psi- = (ge - eg)/sqrt2
    return m;
}

}  // namespace dicke
