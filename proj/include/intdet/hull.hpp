// Exact determinant hull over the vertex matrices of an interval matrix.
//
// Every entry bound of an interval matrix is a double and therefore a
// dyadic rational, so vertex determinants are computed exactly in rational
// arithmetic; the determinant over the whole box is a multilinear function
// of the entries and attains its extreme values at vertices.  The cost is
// 2^k determinant evaluations for k nondegenerate entries, which is capped.

#pragma once

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "intdet/interval_matrix.hpp"

namespace intdet {

struct hull_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class rational_matrix {
 public:
  explicit rational_matrix(std::size_t n) : n_(n), e_(n * n) {
    if (n == 0) throw std::invalid_argument("rational_matrix: empty");
  }

  // exact conversion: doubles are dyadic rationals
  static rational_matrix from_point(const real_matrix& p) {
    rational_matrix m(p.n());
    for (std::size_t i = 0; i < p.n(); ++i)
      for (std::size_t j = 0; j < p.n(); ++j) m(i, j) = mpq_class(p(i, j));
    return m;
  }

  std::size_t n() const { return n_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const {
    return e_[i * n_ + j];
  }

 private:
  std::size_t n_ = 0;
  std::vector<mpq_class> e_;
};

// Exact determinant.  Denominators are cleared row by row and the integer
// part is eliminated fraction-free (Bareiss), so intermediate values stay
// small and every division is exact.
inline mpq_class rational_det(const rational_matrix& m) {
  const std::size_t n = m.n();
  std::vector<mpz_class> a(n * n);
  mpz_class scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class d(1);
    for (std::size_t j = 0; j < n; ++j)
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class f;
      mpz_divexact(f.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den().get_mpz_t());
      a[i * n + j] = m(i, j).get_num() * f;
    }
    scale *= d;
  }

  int sign = 1;
  mpz_class prev(1);
  mpz_class t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r * n + k] == 0) ++r;
      if (r == n) return mpq_class(0);
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }

  mpq_class det(a[n * n - 1]);
  det /= mpq_class(scale);
  if (sign < 0) det = -det;
  return det;
}

// tightest double <= q
inline double to_double_down(const mpq_class& q) {
  double d = q.get_d();  // truncated toward zero
  if (!std::isfinite(d)) d = std::copysign(detail::kMaxFinite, d);
  while (std::isfinite(d) && mpq_class(d) > q) d = detail::prev_float(d);
  return d;
}

// tightest double >= q
inline double to_double_up(const mpq_class& q) {
  double d = q.get_d();
  if (!std::isfinite(d)) d = std::copysign(detail::kMaxFinite, d);
  while (std::isfinite(d) && mpq_class(d) < q) d = detail::next_float(d);
  return d;
}

struct hull_result {
  interval enclosure;      // outward rounding of the exact hull
  mpq_class exact_lo;
  mpq_class exact_hi;
  real_matrix argmin;      // vertex matrices attaining the extremes
  real_matrix argmax;
  std::size_t vertex_count = 0;
};

// Enumerates all vertex matrices in Gray-code order, flipping one entry per
// step and recomputing the determinant from scratch each time (no
// incremental update, so there is no error to accumulate).
inline hull_result vertex_hull_det(const interval_matrix& A) {
  const std::size_t n = A.n();
  std::vector<std::size_t> free_pos;
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    const interval& c = A.entries()[idx];
    if (c.lo() < c.hi()) free_pos.push_back(idx);
  }
  const std::size_t k = free_pos.size();
  if (k > 25)
    throw hull_cap_error("vertex enumeration needs 2^" + std::to_string(k) +
                         " determinants, above the 2^25 cap");

  rational_matrix cur(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cur(i, j) = mpq_class(A(i, j).lo());
  std::vector<mpq_class> lo_q(k), hi_q(k);
  for (std::size_t b = 0; b < k; ++b) {
    const interval& c = A.entries()[free_pos[b]];
    lo_q[b] = mpq_class(c.lo());
    hi_q[b] = mpq_class(c.hi());
  }

  std::uint32_t at_hi = 0;
  mpq_class best_lo = rational_det(cur);
  mpq_class best_hi = best_lo;
  std::uint32_t mask_lo = 0;
  std::uint32_t mask_hi = 0;

  const std::uint64_t total = std::uint64_t(1) << k;
  for (std::uint64_t step = 1; step < total; ++step) {
    const unsigned b = unsigned(std::countr_zero(step));
    at_hi ^= std::uint32_t(1) << b;
    const std::size_t idx = free_pos[b];
    cur(idx / n, idx % n) = (at_hi >> b & 1) ? hi_q[b] : lo_q[b];
    const mpq_class d = rational_det(cur);
    if (d < best_lo) {
      best_lo = d;
      mask_lo = at_hi;
    }
    if (d > best_hi) {
      best_hi = d;
      mask_hi = at_hi;
    }
  }

  const auto vertex_at = [&](std::uint32_t mask) {
    real_matrix v(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v(i, j) = A(i, j).lo();
    for (std::size_t b = 0; b < k; ++b)
      if (mask >> b & 1) {
        const std::size_t idx = free_pos[b];
        v(idx / n, idx % n) = A(idx / n, idx % n).hi();
      }
    return v;
  };

  hull_result out{interval(to_double_down(best_lo), to_double_up(best_hi)),
                  best_lo,
                  best_hi,
                  vertex_at(mask_lo),
                  vertex_at(mask_hi),
                  std::size_t(total)};
  return out;
}

}  // namespace intdet
