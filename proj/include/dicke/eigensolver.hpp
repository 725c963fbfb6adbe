// eigensolver.hpp — symmetric eigendecomposition and the truncation
// convergence protocol (grow the subspace until eigenvalues and eigenvectors
// stop moving).

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "dicke/banded.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/model.hpp"

namespace dicke {

// Full ascending spectrum with orthonormal eigenvectors as columns.
// Sign convention: the largest-magnitude component of each eigenvector is
// positive (first such component on ties), so results are reproducible.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

struct ComplexSpectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

Spectrum eigh(const SymmetricBandedMatrix& m);
Spectrum eigh(const Eigen::MatrixXd& m);
ComplexSpectrum eigh(const Eigen::MatrixXcd& m);

// Checks residual ||H v - lambda v|| <= residual_tol * ||H|| per state and
// pairwise orthonormality to 1e-12; throws std::runtime_error on violation.
void verify_spectrum(const SymmetricBandedMatrix& m, const Spectrum& s,
                     double residual_tol = 1e-10);
void verify_spectrum(const Eigen::MatrixXd& m, const Spectrum& s,
                     double residual_tol = 1e-10);

struct ConvergeOptions {
    double tol_lambda = 1e-10;
    double tol_vector = 1e-10;
    int s_start = 0;  // 0: use 4 * n_states
    int s_step = 0;   // 0: use max(4, s_start / 4) rounded to whole rungs
    int s_max = 12000;
};

// Result of the subspace-growth protocol. Error estimates compare the
// spectrum at final_size against final_size + 4 (one extra rung):
//   delta_lambda[n] = |lambda_n(S) - lambda_n(S+4)|
//   delta_vector[n] = max(0, 1 - |<V_n(S), 0-padded | V_n(S+4)>|)
// On a near-degeneracy (gap < 1e-9 w) the overlap is taken against the
// best-matching vector of the degenerate cluster and the state is flagged.
struct ConvergedSpectrum {
    Spectrum spectrum;  // at final_size
    Parity parity = Parity::positive;
    int n_requested = 0;
    int n_converged = 0;  // longest prefix meeting both tolerances
    std::vector<double> delta_lambda;
    std::vector<double> delta_vector;
    std::vector<bool> degenerate_flag;
    int final_size = 0;
    bool converged = false;

    ParityBasis basis() const { return ParityBasis::enumerate(parity, final_size); }
};

ConvergedSpectrum converge(const ModelParams& params, Parity parity,
                           int n_states, const ConvergeOptions& opts = {});

}  // namespace dicke
