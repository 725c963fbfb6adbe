#include "dicke/banded.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

SymmetricBandedMatrix::SymmetricBandedMatrix(int dim, int half_bandwidth)
    : dim_(dim), kd_(half_bandwidth),
      ab_(static_cast<std::size_t>(half_bandwidth + 1) * static_cast<std::size_t>(dim), 0.0) {
    if (dim <= 0 || half_bandwidth < 0 || half_bandwidth >= dim) {
        throw std::invalid_argument("SymmetricBandedMatrix: bad dim/bandwidth");
    }
}

double SymmetricBandedMatrix::at(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i - j > kd_) return 0.0;
    return ab_[static_cast<std::size_t>(i - j) +
               static_cast<std::size_t>(j) * static_cast<std::size_t>(kd_ + 1)];
}

void SymmetricBandedMatrix::set(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    if (i >= dim_ || j < 0 || i - j > kd_) {
        throw std::out_of_range("SymmetricBandedMatrix::set outside band at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
    }
    ab_[static_cast<std::size_t>(i - j) +
        static_cast<std::size_t>(j) * static_cast<std::size_t>(kd_ + 1)] = v;
}

void SymmetricBandedMatrix::add(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    if (i >= dim_ || j < 0 || i - j > kd_) {
        throw std::out_of_range("SymmetricBandedMatrix::add outside band");
    }
    ab_[static_cast<std::size_t>(i - j) +
        static_cast<std::size_t>(j) * static_cast<std::size_t>(kd_ + 1)] += v;
}

Eigen::MatrixXd SymmetricBandedMatrix::to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
        for (int i = j; i <= std::min(dim_ - 1, j + kd_); ++i) {
            const double v = at(i, j);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

Eigen::VectorXd SymmetricBandedMatrix::multiply(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) {
        throw std::invalid_argument("SymmetricBandedMatrix::multiply: size mismatch");
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
    for (int j = 0; j < dim_; ++j) {
        y(j) += at(j, j) * x(j);
        for (int i = j + 1; i <= std::min(dim_ - 1, j + kd_); ++i) {
            const double v = at(i, j);
            if (v != 0.0) {
                y(i) += v * x(j);
                y(j) += v * x(i);
            }
        }
    }
    return y;
}

bool SymmetricBandedMatrix::all_finite() const {
    for (double v : ab_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace dicke
