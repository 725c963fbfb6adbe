#include "dicke/model.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

void ModelParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(omega) || omega <= 0.0) {
        throw std::invalid_argument("ModelParams: omega must be finite and > 0");
    }
    if (!finite(omega0) || !finite(g) || !finite(drive_x) || !finite(drive_y) ||
        !finite(dipole[0]) || !finite(dipole[1]) || !finite(dipole[2])) {
        throw std::invalid_argument("ModelParams: all parameters must be finite");
    }
}

void EnvironmentParams::validate() const {
    for (const auto& list : {qubit_modes, field_modes}) {
        for (const auto& m : list) {
            if (!(m.frequency > 0.0) || !std::isfinite(m.frequency) ||
                !std::isfinite(m.coupling)) {
                throw std::invalid_argument("EnvironmentParams: bad mode frequency/coupling");
            }
            if (m.truncation < 2) {
                throw std::invalid_argument("EnvironmentParams: mode truncation must be >= 2");
            }
        }
    }
}

Matching consecutive_matching(int n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw std::invalid_argument("matching requires an even number of qubits");
    }
    Matching m;
    for (int i = 0; i < n_qubits; i += 2) m.emplace_back(i, i + 1);
    return m;
}

namespace {

void enumerate_matchings(std::vector<int>& pool, Matching& current,
                         std::vector<Matching>& out) {
    if (pool.empty()) {
        out.push_back(current);
        return;
    }
    const int first = pool.front();
    for (std::size_t i = 1; i < pool.size(); ++i) {
        const int partner = pool[i];
        std::vector<int> rest;
        rest.reserve(pool.size() - 2);
        for (std::size_t j = 1; j < pool.size(); ++j) {
            if (j != i) rest.push_back(pool[j]);
        }
        current.emplace_back(first, partner);
        enumerate_matchings(rest, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<Matching> all_matchings(int n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0 || n_qubits > 10) {
        throw std::invalid_argument("all_matchings: need an even qubit count in [2, 10]");
    }
    std::vector<int> pool(n_qubits);
    for (int i = 0; i < n_qubits; ++i) pool[i] = i;
    std::vector<Matching> out;
    Matching current;
    enumerate_matchings(pool, current, out);
    return out;
}

void validate_matching(const Matching& m, int n_qubits) {
    if (n_qubits % 2 != 0) {
        throw std::invalid_argument("matching: odd qubit count");
    }
    std::vector<bool> used(static_cast<std::size_t>(n_qubits), false);
    if (static_cast<int>(m.size()) * 2 != n_qubits) {
        throw std::invalid_argument("matching: must cover every qubit exactly once");
    }
    for (auto [p, q] : m) {
        if (p < 0 || q < 0 || p >= n_qubits || q >= n_qubits || p == q ||
            used[static_cast<std::size_t>(p)] || used[static_cast<std::size_t>(q)]) {
            throw std::invalid_argument("matching: invalid or repeated qubit index");
        }
        used[static_cast<std::size_t>(p)] = used[static_cast<std::size_t>(q)] = true;
    }
}

}  // namespace dicke
