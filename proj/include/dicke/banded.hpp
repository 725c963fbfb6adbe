// banded.hpp — real symmetric banded matrix in LAPACK lower band storage.

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dicke {

// Stores only the lower triangle within the band, column-major, so the raw
// buffer can be handed to LAPACK dsb* routines unchanged (uplo = 'L').
class SymmetricBandedMatrix {
  public:
    SymmetricBandedMatrix(int dim, int half_bandwidth);

    int dim() const { return dim_; }
    int bandwidth() const { return kd_; }
    int ldab() const { return kd_ + 1; }

    // A(i, j); zero outside the band.
    double at(int i, int j) const;
    // Set A(i, j) = A(j, i) = v; |i - j| must be within the band.
    void set(int i, int j, double v);
    void add(int i, int j, double v);

    const double* data() const { return ab_.data(); }
    double* data() { return ab_.data(); }

    Eigen::MatrixXd to_dense() const;
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
    bool all_finite() const;

  private:
    int dim_;
    int kd_;
    std::vector<double> ab_;  // (kd+1) x dim, column-major
};

}  // namespace dicke
