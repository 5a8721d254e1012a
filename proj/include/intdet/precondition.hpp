// Preconditioning for determinant enclosures.
//
// A point matrix B (and for the two-sided variant a second matrix C)
// multiplies the input so the enclosure method runs on a matrix close to
// the identity (or close to diagonal); the determinant of the product is
// then divided by a verified enclosure of det(B) (det(B) det(C)).  The
// divisor enclosure must not contain zero, otherwise the preconditioner is
// rejected.

#pragma once

#include <stdexcept>
#include <utility>

#include "intdet/enclosures.hpp"

namespace intdet {

struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct precond_result {
  interval_matrix matrix;   // enclosure of B A (or B A C)
  interval divisor;         // verified enclosure of det(B) (times det(C))
  precond_kind kind = precond_kind::none;
};

// B is the approximate inverse of the midpoint, so B A is close to I.
inline precond_result precond_inv(const interval_matrix& A) {
  real_matrix B;
  try {
    B = approx_inverse(A.mid_matrix());
  } catch (const singular_matrix_error&) {
    throw precondition_error("inv: midpoint matrix is numerically singular");
  }
  const interval d = verified_point_det(B);
  if (zero_in(d))
    throw precondition_error("inv: could not verify the preconditioner is regular");
  return {mul(B, A), d, precond_kind::inv};
}

// B = L^{-1} P from the pivoted factorization P A_c = L U, so B A is close
// to upper triangular; det(B) is +-1 up to rounding.
inline precond_result precond_lu(const interval_matrix& A) {
  const std::size_t n = A.n();
  detail::plu f;
  try {
    f = detail::lu_decompose(A.mid_matrix());
  } catch (const singular_matrix_error&) {
    throw precondition_error("lu: midpoint matrix is numerically singular");
  }
  // forward-substitute the permuted identity: column j of B solves L y = P e_j
  real_matrix B(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = (f.perm[i] == j) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) y[i] -= f.lu(i, k) * y[k];
    }
    for (std::size_t i = 0; i < n; ++i) B(i, j) = y[i];
  }
  const interval d = verified_point_det(B);
  if (zero_in(d))
    throw precondition_error("lu: could not verify the preconditioner is regular");
  return {mul(B, A), d, precond_kind::lu};
}

// Two-sided variant for symmetric midpoints: with A_c = L D L^T the matrix
// L^{-1} A L^{-T} is close to diagonal.  det(L^{-1}) is 1 up to rounding and
// the divisor is its verified enclosure squared.
inline precond_result precond_ldl(const interval_matrix& A) {
  const std::size_t n = A.n();
  detail::require_symmetric(A.mid_matrix(), "precond_ldl");
  const real_matrix S = detail::symmetric_part(A.mid_matrix());

  // unpivoted LDL^T; fails when a leading minor vanishes
  real_matrix L = real_matrix::identity(n);
  std::vector<double> dd(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double v = S(j, j);
    for (std::size_t k = 0; k < j; ++k) v -= L(j, k) * L(j, k) * dd[k];
    if (!(std::fabs(v) > 1e-300))
      throw precondition_error("ldl: factorization broke down on a vanishing pivot");
    dd[j] = v;
    for (std::size_t i = j + 1; i < n; ++i) {
      double w = S(i, j);
      for (std::size_t k = 0; k < j; ++k) w -= L(i, k) * L(j, k) * dd[k];
      L(i, j) = w / v;
    }
  }

  // B = L^{-1} by forward substitution of the identity
  real_matrix B(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = (i == j) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) y[i] -= L(i, k) * y[k];
    }
    for (std::size_t i = 0; i < n; ++i) B(i, j) = y[i];
  }
  const interval db = verified_point_det(B);
  const interval d = db * db;
  if (zero_in(d))
    throw precondition_error("ldl: could not verify the preconditioner is regular");
  return {mul(mul(B, A), B.transposed()), d, precond_kind::ldl};
}

inline precond_result make_precond(const interval_matrix& A, precond_kind k) {
  switch (k) {
    case precond_kind::inv: return precond_inv(A);
    case precond_kind::lu: return precond_lu(A);
    case precond_kind::ldl: return precond_ldl(A);
    case precond_kind::none: break;
  }
  throw std::invalid_argument("make_precond: no preconditioner requested");
}

inline det_enclosure run_method(const interval_matrix& A, method_kind m) {
  switch (m) {
    case method_kind::ge: return det_ge(A);
    case method_kind::hadamard: return det_hadamard(A);
    case method_kind::gerschgorin: return det_gerschgorin(A);
    case method_kind::cramer: return det_cramer(A);
    case method_kind::eig_sym: return det_eig_sym(A);
  }
  throw std::invalid_argument("run_method: unknown method");
}

inline det_enclosure det_with_precond(const interval_matrix& A, method_kind m,
                                      precond_kind k) {
  if (k == precond_kind::none) return run_method(A, m);
  const precond_result p = make_precond(A, k);
  det_enclosure out = run_method(p.matrix, m);
  out.precond = k;
  if (!out.failed) out.value = out.value / p.divisor;
  return out;
}

// One-pass monotonicity refinement.
//
// The derivative of det with respect to entry (i, j) is the cofactor, the
// signed determinant of the complementary minor.  When a cofactor enclosure
// over the box has constant sign, det is monotone in that entry for every
// configuration of the remaining entries, so the extreme values are
// attained with the entry pinned at a bound; this holds even when the box
// contains singular members.  Entries whose minor enclosure straddles zero
// get a second chance: over a box verified regular by the Krawczyk solves,
// the cofactor equals det times the transposed inverse, so the constant
// determinant sign combined with a sign-constant inverse enclosure also
// pins the entry.  The base method runs on the two pinned matrices;
// intersecting with the plain run keeps the result never wider than the
// base.
inline det_enclosure refine_monotonicity(const interval_matrix& A, method_kind m,
                                         precond_kind k) {
  det_enclosure base = det_with_precond(A, m, k);
  const std::size_t n = A.n();

  const auto sign_constant = [](const interval& t) {
    return t.lo() >= 0.0 || t.hi() <= 0.0;
  };

  // deriv[e] encloses the cofactor sign at entry e once known[e] is set
  std::vector<interval> deriv(n * n, interval::entire());
  std::vector<bool> known(n * n, false);
  if (n == 1) {
    deriv[0] = interval(1.0);
    known[0] = true;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<interval> me;
        me.reserve((n - 1) * (n - 1));
        for (std::size_t r = 0; r < n; ++r) {
          if (r == i) continue;
          for (std::size_t c = 0; c < n; ++c)
            if (c != j) me.push_back(A(r, c));
        }
        const det_enclosure kd = det_ge(interval_matrix(n - 1, std::move(me)));
        if (kd.failed) continue;
        deriv[i * n + j] = ((i + j) % 2 == 0) ? kd.value : -kd.value;
        known[i * n + j] = true;
      }
    }
  }

  bool leftovers = false;
  for (std::size_t e = 0; e < n * n; ++e)
    leftovers = leftovers || !known[e] || !sign_constant(deriv[e]);
  if (leftovers) {
    const interval dc = verified_point_det(A.mid_matrix());
    if (!zero_in(dc)) {
      const double s = (dc.lo() > 0.0) ? 1.0 : -1.0;
      const interval_matrix At = A.transposed();
      std::vector<interval> B(n * n, interval::entire());
      bool regular = true;
      for (std::size_t j = 0; j < n && regular; ++j) {
        interval_vector rhs(n, interval(0.0));
        rhs[j] = interval(1.0);
        const interval_vector col = krawczyk_solve(At, rhs);
        for (std::size_t i = 0; i < n; ++i) {
          regular = regular && bounded(col[i]);
          B[i * n + j] = col[i];
        }
      }
      if (regular) {
        for (std::size_t e = 0; e < n * n; ++e) {
          if (known[e] && sign_constant(deriv[e])) continue;
          const interval t = scale(s, B[e]);
          if (sign_constant(t)) {
            deriv[e] = t;
            known[e] = true;
          }
        }
      }
    }
  }

  std::vector<interval> lo_e(A.entries());
  std::vector<interval> hi_e(A.entries());
  std::size_t pinned = 0;
  for (std::size_t e = 0; e < n * n; ++e) {
    if (!known[e]) continue;
    const interval& c = A.entries()[e];
    if (deriv[e].lo() >= 0.0) {
      lo_e[e] = interval(c.lo());
      hi_e[e] = interval(c.hi());
      ++pinned;
    } else if (deriv[e].hi() <= 0.0) {
      lo_e[e] = interval(c.hi());
      hi_e[e] = interval(c.lo());
      ++pinned;
    }
  }
  if (pinned == 0) return base;

  det_enclosure low, high;
  try {
    low = det_with_precond(interval_matrix(n, std::move(lo_e)), m, k);
    high = det_with_precond(interval_matrix(n, std::move(hi_e)), m, k);
  } catch (const precondition_error&) {
    return base;
  } catch (const std::invalid_argument&) {
    return base;  // pinning can break a method's structural requirements
  }
  if (low.failed || high.failed) return base;

  det_enclosure out = base;
  out.value = intersect(interval(low.value.lo(), high.value.hi()), base.value);
  out.failed = !bounded(out.value);
  out.stats.refined = true;
  return out;
}

}  // namespace intdet
