// model.hpp — physical parameter sets for the two-qubit Dicke model and its
// ion-trap variant, plus bath mode specifications for composite builds.

#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dicke {

enum class Model { dicke, variant };

inline const char* to_string(Model m) {
    return m == Model::dicke ? "dicke" : "variant";
}

// All energies in units of the field frequency; omega = 1 is canonical.
struct ModelParams {
    double omega = 1.0;   // field frequency
    double omega0 = 1.0;  // qubit transition frequency
    double g = 0.0;       // qubit-field coupling

    double drive_x = 0.0;  // Omega_x S_x driving amplitude
    double drive_y = 0.0;  // Omega_y S_y driving amplitude

    std::array<double, 3> dipole{0.0, 0.0, 0.0};  // (delta_x, delta_y, delta_z)

    Model model = Model::dicke;

    bool has_driving() const { return drive_x != 0.0 || drive_y != 0.0; }
    double dipole_sum() const { return dipole[0] + dipole[1] + dipole[2]; }

    void validate() const;
};

// One harmonic bath mode: frequency, linear coupling strength, Fock levels.
struct BathMode {
    double frequency = 1.0;
    double coupling = 1.0;
    int truncation = 2;  // number of Fock levels (>= 2)
};

struct EnvironmentParams {
    std::vector<BathMode> qubit_modes;  // couple through (b^+ + b) S_x
    std::vector<BathMode> field_modes;  // couple through (c^+ + c)(a^+ + a)

    bool empty() const { return qubit_modes.empty() && field_modes.empty(); }
    void validate() const;
};

using Matching = std::vector<std::pair<int, int>>;

// Default perfect matching (0,1)(2,3)... over an even number of qubits.
Matching consecutive_matching(int n_qubits);

// All perfect matchings of {0..n_qubits-1}; n_qubits must be even and small.
std::vector<Matching> all_matchings(int n_qubits);

void validate_matching(const Matching& m, int n_qubits);

}  // namespace dicke
