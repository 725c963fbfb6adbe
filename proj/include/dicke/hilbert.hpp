// hilbert.hpp — parity-subspace bases of the field (x) two-qubit space and the
// Bell change of basis on the (ge, eg) pair.
//
// The Z2 parity of a product state |n, q1 q2> is (-1)^(n + #excited qubits).
// The positive subspace collects {|2k,ee>, |2k,gg>, |2k+1,ge>, |2k+1,eg>},
// the negative one the complementary photon parities.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace dicke {

enum class Parity { positive, negative };

inline const char* to_string(Parity p) {
    return p == Parity::positive ? "positive" : "negative";
}

inline Parity opposite(Parity p) {
    return p == Parity::positive ? Parity::negative : Parity::positive;
}

enum class QubitLabel : int { ee = 0, gg = 1, ge = 2, eg = 3 };

const char* to_string(QubitLabel l);

struct BasisState {
    int photon = 0;
    QubitLabel label = QubitLabel::ee;

    bool operator==(const BasisState&) const = default;
};

// Ordered enumeration of a parity subspace truncated to `size` basis states.
//
// Ordering is rung-major with ascending photon number. A rung covers two
// adjacent photon numbers (2k, 2k+1) and contributes four states:
//   positive parity, rung k: |2k,ee>, |2k,gg>, |2k+1,ge>, |2k+1,eg>
//   negative parity, rung k: |2k,ge>, |2k,eg>, |2k+1,ee>, |2k+1,gg>
// This keeps the Hamiltonian block-tridiagonal with half-bandwidth <= 3.
class ParityBasis {
  public:
    static ParityBasis enumerate(Parity parity, int size);

    Parity parity() const { return parity_; }
    int size() const { return size_; }
    int rung_count() const { return size_ / 4; }
    int max_photon() const { return size_ / 2 - 1; }

    const BasisState& state(int index) const;
    int index_of(const BasisState& s) const;   // -1 if not in this basis
    bool contains(const BasisState& s) const { return index_of(s) >= 0; }

    const std::vector<BasisState>& states() const { return states_; }

  private:
    ParityBasis(Parity parity, int size);

    Parity parity_;
    int size_;
    std::vector<BasisState> states_;
};

enum class BellLabel : int { Phi_plus = 0, Phi_minus = 1, Psi_plus = 2, Psi_minus = 3 };

// (c_ge, c_eg) -> (c_Psi+, c_Psi-) = ((c_ge+c_eg)/sqrt2, (c_ge-c_eg)/sqrt2).
std::pair<double, double> to_bell(double c_ge, double c_eg);
std::pair<std::complex<double>, std::complex<double>>
to_bell(std::complex<double> c_ge, std::complex<double> c_eg);

// Inverse map, (c_Psi+, c_Psi-) -> (c_ge, c_eg).
std::pair<double, double> from_bell(double c_plus, double c_minus);

// Orthogonal change of basis from the bare two-qubit basis (ee, eg, ge, gg)
// to the Bell basis (Phi+, Phi-, Psi+, Psi-); row b holds the bare-basis
// coefficients of Bell state b.
Eigen::Matrix4d bell_matrix();

}  // namespace dicke
