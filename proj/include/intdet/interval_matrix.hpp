// Square interval matrix with cached midpoint and radius views.
//
// Entries must be bounded: the views satisfy
//   [mid - rad, mid + rad] >= entry  (entrywise, outward rounded)
// which has no finite representation for unbounded entries.  Unbounded
// results only ever appear in interval vectors and scalars.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "intdet/interval.hpp"
#include "intdet/real_matrix.hpp"

namespace intdet {

class interval_matrix {
 public:
  interval_matrix(std::size_t n, std::vector<interval> entries)
      : n_(n), e_(std::move(entries)), mid_(n), rad_(n) {
    if (n == 0) throw std::invalid_argument("interval_matrix: empty");
    if (e_.size() != n * n)
      throw std::invalid_argument("interval_matrix: entry count mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const interval& c = e_[i * n_ + j];
        if (!bounded(c))
          throw std::invalid_argument("interval_matrix: unbounded entry");
        const double m = mid(c);
        mid_(i, j) = m;
        rad_(i, j) = std::max(detail::sub_up(m, c.lo()),
                              detail::sub_up(c.hi(), m));
      }
    }
  }

  static interval_matrix from_bounds(const real_matrix& lo, const real_matrix& hi) {
    if (lo.n() != hi.n())
      throw std::invalid_argument("interval_matrix: bound shape mismatch");
    const std::size_t n = lo.n();
    std::vector<interval> e;
    e.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e.emplace_back(lo(i, j), hi(i, j));
    return interval_matrix(n, std::move(e));
  }

  // [center - radius, center + radius] entrywise, outward rounded
  static interval_matrix inflate(const real_matrix& center, double radius) {
    if (!(radius >= 0.0))
      throw std::invalid_argument("interval_matrix: negative radius");
    const std::size_t n = center.n();
    std::vector<interval> e;
    e.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        e.emplace_back(detail::sub_down(center(i, j), radius),
                       detail::add_up(center(i, j), radius));
    return interval_matrix(n, std::move(e));
  }

  static interval_matrix from_point(const real_matrix& p) {
    return from_bounds(p, p);
  }

  std::size_t n() const { return n_; }

  const interval& operator()(std::size_t i, std::size_t j) const {
    return e_[i * n_ + j];
  }

  const real_matrix& mid_matrix() const { return mid_; }
  const real_matrix& rad_matrix() const { return rad_; }
  const std::vector<interval>& entries() const { return e_; }

  interval_matrix transposed() const {
    std::vector<interval> t(e_.size(), interval());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t[j * n_ + i] = e_[i * n_ + j];
    return interval_matrix(n_, std::move(t));
  }

  // drop row 0 and column 0
  interval_matrix trailing_minor() const {
    if (n_ < 2) throw std::invalid_argument("trailing_minor: matrix too small");
    const std::size_t m = n_ - 1;
    std::vector<interval> t;
    t.reserve(m * m);
    for (std::size_t i = 1; i < n_; ++i)
      for (std::size_t j = 1; j < n_; ++j) t.push_back(e_[i * n_ + j]);
    return interval_matrix(m, std::move(t));
  }

 private:
  std::size_t n_ = 0;
  std::vector<interval> e_;
  real_matrix mid_;
  real_matrix rad_;
};

// B * A for point B, outward rounded
inline interval_matrix mul(const real_matrix& B, const interval_matrix& A) {
  const std::size_t n = A.n();
  if (B.n() != n) throw std::invalid_argument("mul: shape mismatch");
  std::vector<interval> out(n * n, interval());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double lo = 0.0;
      double hi = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const interval t = scale(B(i, k), A(k, j));
        lo = detail::add_down(lo, t.lo());
        hi = detail::add_up(hi, t.hi());
      }
      out[i * n + j] = interval(lo, hi);
    }
  }
  return interval_matrix(n, std::move(out));
}

// A * C for point C, outward rounded
inline interval_matrix mul(const interval_matrix& A, const real_matrix& C) {
  const std::size_t n = A.n();
  if (C.n() != n) throw std::invalid_argument("mul: shape mismatch");
  std::vector<interval> out(n * n, interval());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double lo = 0.0;
      double hi = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const interval t = scale(C(k, j), A(i, k));
        lo = detail::add_down(lo, t.lo());
        hi = detail::add_up(hi, t.hi());
      }
      out[i * n + j] = interval(lo, hi);
    }
  }
  return interval_matrix(n, std::move(out));
}

// A * x for an interval vector x (entries of x may be unbounded)
inline interval_vector mul(const interval_matrix& A, const interval_vector& x) {
  const std::size_t n = A.n();
  if (x.size() != n) throw std::invalid_argument("mul: shape mismatch");
  interval_vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    interval acc(0.0);
    for (std::size_t k = 0; k < n; ++k) acc = acc + A(i, k) * x[k];
    y[i] = acc;
  }
  return y;
}

}  // namespace intdet
