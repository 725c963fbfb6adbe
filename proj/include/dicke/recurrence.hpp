// recurrence.hpp — analytic structure of the model: exact singlet-branch
// eigenpairs, the three-term recurrence obeyed by the Psi+ coefficients of
// triplet-sector eigenvectors, and eigenvector reconstruction from them.
//
// Positive parity, with K(x) = (x - lambda) / ((x - lambda)^2 - w0^2):
//   alpha_j = g^2 sqrt(2j(2j+1)) K(2j w)
//   beta_j  = lambda - (2j+1) w + g^2 (2j+1) K(2j w) + g^2 (2j+2) K((2j+2) w)
// Negative parity:
//   alpha_j = g^2 sqrt(2j(2j-1)) K((2j-1) w)
//   beta_j  = lambda - 2j w + g^2 (2j) K((2j-1) w) + g^2 (2j+1) K((2j+1) w)
// and the recurrence alpha_j c_{j-1} + beta_j c_j + alpha_{j+1} c_{j+1} = 0.
// The combined forms above are finite at j = 0 (alpha_0 = 0 closes the
// boundary); candidate eigenvalues near a zero of a K denominator are flagged
// as pole-proximate instead of being evaluated.

#pragma once

#include <Eigen/Dense>

#include <optional>

#include "dicke/banded.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/model.hpp"

namespace dicke {

inline constexpr double kPoleTolFactor = 1e-6;  // pole_tol = 1e-6 * omega

struct SingletEigenpair {
    int photon = 0;
    double eigenvalue = 0.0;
    Parity parity = Parity::positive;
    Eigen::VectorXd state;  // on ParityBasis(parity, verify_size)
    int verify_size = 0;
    double residual = 0.0;  // ||H state - lambda state|| on that basis
};

// Exact eigenpair |Psi-, n> of the Dicke model, eigenvalue w n - sum(delta)/4.
// Photon parity fixes the subspace: odd n is positive parity.
SingletEigenpair singlet_eigenpair(int n, const ModelParams& params,
                                   int verify_size = 0);

// Exact eigenpair |Phi-, n> of the variant model, eigenvalue
// w n - (delta_x - delta_y - delta_z)/4. Even n is positive parity.
SingletEigenpair variant_trapped_eigenpair(int n, const ModelParams& params,
                                           int verify_size = 0);

class RecurrenceCoefficients {
  public:
    RecurrenceCoefficients(Parity parity, double lambda,
                           const ModelParams& params, int max_rung);

    double alpha(int j) const;
    double beta(int j) const;

    Parity parity() const { return parity_; }
    double lambda() const { return lambda_; }
    int max_rung() const { return max_rung_; }

    bool pole_flagged() const { return pole_flagged_; }
    double pole_distance() const { return pole_distance_; }

  private:
    double k_factor(double x) const;

    Parity parity_;
    double lambda_;
    double omega_, omega0_, g2_;
    int max_rung_;
    bool pole_flagged_ = false;
    double pole_distance_ = 0.0;
};

RecurrenceCoefficients recurrence_coefficients(Parity parity, double lambda,
                                               const ModelParams& params,
                                               int max_rung);

enum class RecurrenceStatus {
    ok,
    singlet_input,   // all Psi+ coefficients vanish; nothing to check
    pole_proximate,  // lambda too close to a coefficient pole
    coupling_off,    // g = 0, recurrence degenerates
};

struct ResidualReport {
    RecurrenceStatus status = RecurrenceStatus::ok;
    double residual = 0.0;  // max_j |recurrence_j| / max_j |c_j|
};

// Psi+ coefficient per rung, via to_bell on each (ge, eg) pair.
Eigen::VectorXd extract_f1(const Eigen::VectorXd& v, const ParityBasis& basis);

ResidualReport recurrence_residual(const Eigen::VectorXd& v, double lambda,
                                   Parity parity, const ModelParams& params,
                                   const ParityBasis& basis);

// Rebuilds the full eigenvector from its Psi+ coefficients,
//   f2 = (w n + w0 - lambda)/(w n - w0 - lambda) f0,
//   f0 = -(g/sqrt2) [(w n - w0 - lambda)/((w n - lambda)^2 - w0^2)](a+a^+) f1,
// and normalizes. Throws std::domain_error when a denominator vanishes on an
// occupied rung.
Eigen::VectorXd reconstruct_from_f1(const Eigen::VectorXd& f1, double lambda,
                                    const ModelParams& params,
                                    const ParityBasis& basis);

}  // namespace dicke
