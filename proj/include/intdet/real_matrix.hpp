// Minimal dense square matrix of doubles, row-major.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace intdet {

class real_matrix {
 public:
  real_matrix() = default;
  explicit real_matrix(std::size_t n) : n_(n), e_(n * n, 0.0) {
    if (n == 0) throw std::invalid_argument("real_matrix: empty");
  }

  static real_matrix identity(std::size_t n) {
    real_matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t n() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  real_matrix transposed() const {
    real_matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : e_) m = std::max(m, std::fabs(v));
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> e_;
};

}  // namespace intdet
