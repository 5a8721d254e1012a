// Verified linear algebra building blocks.
//
// Approximate computations (LU, Jacobi, power iteration) run in plain
// doubles; everything that feeds a result is wrapped in an interval
// verification step, so approximation quality only ever affects tightness,
// never correctness.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "intdet/interval_matrix.hpp"

namespace intdet {

struct singular_matrix_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct ge_outcome {
  interval value{0.0};
  bool failed = false;   // a pivot column used for elimination had 0 inside
                         // every candidate
  int swaps = 0;
  double min_pivot_mig = kInf;
};

// Interval Gaussian elimination with mignitude-maximal pivoting; returns the
// signed pivot product.  If every remaining candidate in a column is exactly
// [0, 0] then each member of the box is singular and the determinant is an
// exact zero, which is not a failure.  The final pivot is only multiplied
// into the product, never divided by, so it may contain zero.
inline ge_outcome interval_ge_det(std::vector<interval> a, std::size_t n) {
  ge_outcome out;
  interval det(1.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 == n) {
      const interval& last = a[k * n + k];
      out.min_pivot_mig = std::min(out.min_pivot_mig, mig(last));
      det = det * last;
      break;
    }
    std::size_t best = k;
    double best_mig = -1.0;
    for (std::size_t i = k; i < n; ++i) {
      const double m = mig(a[i * n + k]);
      if (m > best_mig) {
        best_mig = m;
        best = i;
      }
    }
    if (best_mig <= 0.0) {
      bool all_zero = true;
      for (std::size_t i = k; i < n && all_zero; ++i) {
        const interval& c = a[i * n + k];
        all_zero = c.lo() == 0.0 && c.hi() == 0.0;
      }
      if (all_zero) {
        out.value = interval(0.0);
        out.min_pivot_mig = 0.0;
        return out;
      }
      out.failed = true;
      out.value = interval::entire();
      return out;
    }
    if (best != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[best * n + j]);
      ++out.swaps;
    }
    const interval piv = a[k * n + k];
    out.min_pivot_mig = std::min(out.min_pivot_mig, best_mig);
    det = det * piv;
    for (std::size_t i = k + 1; i < n; ++i) {
      const interval f = a[i * n + k] / piv;
      for (std::size_t j = k + 1; j < n; ++j)
        a[i * n + j] = a[i * n + j] - f * a[k * n + j];
    }
  }
  if (out.swaps % 2) det = -det;
  out.value = det;
  return out;
}

struct plu {
  real_matrix lu;                  // unit L strictly below, U on and above
  std::vector<std::size_t> perm;   // row i of PA is row perm[i] of A
  int sign = 1;
};

inline plu lu_decompose(const real_matrix& M) {
  const std::size_t n = M.n();
  plu f{M, std::vector<std::size_t>(n), 1};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t(0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    double best = std::fabs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(f.lu(i, k));
      if (v > best) {
        best = v;
        r = i;
      }
    }
    if (!(best > 1e-300))
      throw singular_matrix_error("pivot vanished during LU factorization");
    if (r != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(r, j));
      std::swap(f.perm[k], f.perm[r]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      f.lu(i, k) /= f.lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j)
        f.lu(i, j) -= f.lu(i, k) * f.lu(k, j);
    }
  }
  return f;
}

// x := A^{-1} b given the factorization of A
inline std::vector<double> lu_solve(const plu& f, const std::vector<double>& b) {
  const std::size_t n = f.perm.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) x[i] -= f.lu(i, k) * x[k];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= f.lu(ii, k) * x[k];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

// group interval projections into maximal connected components; touching
// endpoints connect
struct bunch {
  std::size_t count = 0;
  interval range{0.0};
};

inline std::vector<bunch> connected_bunches(std::vector<interval> projections) {
  std::sort(projections.begin(), projections.end(),
            [](const interval& a, const interval& b) { return a.lo() < b.lo(); });
  std::vector<bunch> out;
  for (const interval& p : projections) {
    if (!out.empty() && p.lo() <= out.back().range.hi()) {
      bunch& b = out.back();
      b.count += 1;
      b.range = interval(b.range.lo(), std::max(b.range.hi(), p.hi()));
    } else {
      out.push_back({1, p});
    }
  }
  return out;
}

struct jacobi_out {
  std::vector<double> lam;   // descending
  real_matrix V;             // columns are the matching eigenvectors
  bool converged = false;
};

// Plain cyclic Jacobi; only used to produce a candidate diagonalizer, the
// verification happens afterwards in interval arithmetic.
inline jacobi_out jacobi_eig(real_matrix a) {
  const std::size_t n = a.n();
  jacobi_out out{std::vector<double>(n), real_matrix::identity(n), false};
  double fnorm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) fnorm2 += a(i, j) * a(i, j);
  const double threshold = 1e-13 * std::sqrt(fnorm2);

  for (int sweep = 0; sweep < 30 && !out.converged; ++sweep) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off2 += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off2) <= threshold) {
      out.converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= threshold / (16.0 * double(n) * double(n)))
          continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0)
                             ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                             : -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = out.V(r, p);
          const double vrq = out.V(r, q);
          out.V(r, p) = c * vrp - s * vrq;
          out.V(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!out.converged) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off2 += 2.0 * a(i, j) * a(i, j);
    out.converged = std::sqrt(off2) <= threshold;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  real_matrix V(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.lam[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) V(i, j) = out.V(i, order[j]);
  }
  out.V = V;
  return out;
}

// exact symmetric part; the halving is exact and symmetric inputs pass
// through unchanged
inline real_matrix symmetric_part(const real_matrix& M) {
  real_matrix S(M.n());
  for (std::size_t i = 0; i < M.n(); ++i)
    for (std::size_t j = 0; j < M.n(); ++j)
      S(i, j) = 0.5 * (M(i, j) + M(j, i));
  return S;
}

inline void require_symmetric(const real_matrix& M, const char* who) {
  const double tol = 1e-8 * (1.0 + M.max_abs());
  for (std::size_t i = 0; i < M.n(); ++i)
    for (std::size_t j = i + 1; j < M.n(); ++j)
      if (!(std::fabs(M(i, j) - M(j, i)) <= tol))
        throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
}

}  // namespace detail

// Enclosure of the determinant of a point matrix via interval elimination.
// [-inf, inf] if verification fails, exact [0, 0] if the matrix is
// structurally singular for the elimination.
inline interval verified_point_det(const real_matrix& M) {
  const std::size_t n = M.n();
  std::vector<interval> a;
  a.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.emplace_back(M(i, j));
  return detail::interval_ge_det(std::move(a), n).value;
}

inline real_matrix approx_inverse(const real_matrix& M) {
  const std::size_t n = M.n();
  const detail::plu f = detail::lu_decompose(M);
  real_matrix B(n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const std::vector<double> col = detail::lu_solve(f, e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(col[i]))
        throw singular_matrix_error("inverse overflowed, matrix is numerically singular");
      B(i, j) = col[i];
    }
  }
  return B;
}

// Rigorous upper bound on the spectral radius of an entrywise-nonnegative
// matrix: for any positive x, rho(N) <= max_i (Nx)_i / x_i.  The test vector
// is sharpened by power iteration; the first pass (x = e) already gives the
// row-sum bound, and the minimum over passes is kept.
inline double spectral_radius_ub(const real_matrix& N) {
  const std::size_t n = N.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(N(i, j) >= 0.0))
        throw std::invalid_argument("spectral_radius_ub: matrix must be entrywise nonnegative");

  std::vector<double> x(n, 1.0);
  std::vector<double> y(n);
  double best = detail::kInf;
  for (int it = 0; it < 60; ++it) {
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        s = detail::add_up(s, detail::mul_up(N(i, j), x[j]));
      bound = std::max(bound, detail::div_up(s, x[i]));
    }
    best = std::min(best, bound);

    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += N(i, j) * x[j];
      y[i] = s;
      m = std::max(m, s);
    }
    if (m == 0.0) break;  // every row is zero, best is already 0
    for (std::size_t i = 0; i < n; ++i) x[i] = std::max(y[i] / m, 1e-290);
  }
  return best;
}

namespace detail {

// Ordered eigenvalue enclosures straight from Gerschgorin components: a
// connected component of k discs holds exactly k eigenvalues, so each of its
// k slots in the descending order gets the component range.
inline std::vector<interval> gersch_sym_enclosures(const real_matrix& S) {
  const std::size_t n = S.n();
  std::vector<interval> projections;
  projections.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r = add_up(r, std::fabs(S(i, j)));
    projections.emplace_back(sub_down(S(i, i), r), add_up(S(i, i), r));
  }
  std::vector<bunch> comps = connected_bunches(std::move(projections));
  std::vector<interval> out;
  out.reserve(n);
  for (auto it = comps.rbegin(); it != comps.rend(); ++it)
    for (std::size_t c = 0; c < it->count; ++c) out.push_back(it->range);
  return out;
}

}  // namespace detail

// Enclosures of all eigenvalues of a symmetric matrix, descending.
//
// A floating-point Jacobi pass produces a near-diagonalizer V; the
// congruence B = V^T S V is then evaluated in interval arithmetic.  By Weyl
// the ordered eigenvalues of B sit in the ordered diagonal entries widened
// by the off-diagonal Frobenius norm, and the congruence itself scales each
// eigenvalue by a factor inside [1 - delta, 1 + delta] where delta bounds
// ||V^T V - I||.  Dividing out that factor gives enclosures for S itself.
// If Jacobi fails to converge or V is too far from orthogonal, fall back to
// Gerschgorin components of S, which is always valid, only wider.
inline std::vector<interval> sym_eig_enclosures(const real_matrix& S0) {
  detail::require_symmetric(S0, "sym_eig_enclosures");
  const real_matrix S = detail::symmetric_part(S0);
  const std::size_t n = S.n();
  if (n == 1) return {interval(S(0, 0))};

  const detail::jacobi_out j = detail::jacobi_eig(S);
  if (j.converged) {
    const interval_matrix iS = interval_matrix::from_point(S);
    const interval_matrix B = mul(mul(j.V.transposed(), iS), j.V);

    double off2 = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        if (r == c) continue;
        const double m = mag(B(r, c));
        off2 = detail::add_up(off2, detail::mul_up(m, m));
      }
    const double off = detail::sqrt_up(off2);

    // orthogonality defect ||V^T V - I||_F, rounded up
    double g2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        double lo = (r == c) ? -1.0 : 0.0;
        double hi = lo;
        for (std::size_t t = 0; t < n; ++t) {
          lo = detail::add_down(lo, detail::mul_down(j.V(t, r), j.V(t, c)));
          hi = detail::add_up(hi, detail::mul_up(j.V(t, r), j.V(t, c)));
        }
        const double m = std::max(std::fabs(lo), std::fabs(hi));
        g2 = detail::add_up(g2, detail::mul_up(m, m));
      }
    }
    const double delta = detail::sqrt_up(g2);

    if (delta < 0.5) {
      const interval theta(detail::sub_down(1.0, delta),
                           detail::add_up(1.0, delta));
      std::vector<double> los(n), his(n);
      for (std::size_t i = 0; i < n; ++i) {
        los[i] = B(i, i).lo();
        his[i] = B(i, i).hi();
      }
      std::sort(los.begin(), los.end(), std::greater<>());
      std::sort(his.begin(), his.end(), std::greater<>());
      std::vector<interval> out;
      out.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(interval(detail::sub_down(los[i], off),
                               detail::add_up(his[i], off)) /
                      theta);
      return out;
    }
  }
  return detail::gersch_sym_enclosures(S);
}

// Enclosure of the solution set of A x = b over all members.  Returns a
// vector of [-inf, inf] components when verification fails; regularity of A
// is certified as a side effect of success.
inline interval_vector krawczyk_solve(const interval_matrix& A,
                                      const interval_vector& b) {
  const std::size_t n = A.n();
  if (b.size() != n) throw std::invalid_argument("krawczyk_solve: shape mismatch");
  const auto fail = [n] { return interval_vector(n, interval::entire()); };
  for (const interval& c : b)
    if (!bounded(c)) return fail();

  real_matrix R;
  try {
    R = approx_inverse(A.mid_matrix());
  } catch (const singular_matrix_error&) {
    return fail();
  }

  std::vector<double> bc(n), xt(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) bc[i] = mid(b[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) xt[i] += R(i, k) * bc[k];

  // residual d = b - A xt, then Z = R d, both outward rounded
  interval_vector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    interval acc = b[i];
    for (std::size_t k = 0; k < n; ++k) acc = acc - scale(xt[k], A(i, k));
    d[i] = acc;
  }
  interval_vector Z(n);
  for (std::size_t i = 0; i < n; ++i) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const interval t = scale(R(i, k), d[k]);
      lo = detail::add_down(lo, t.lo());
      hi = detail::add_up(hi, t.hi());
    }
    Z[i] = interval(lo, hi);
  }

  // C = I - R A
  const interval_matrix P = mul(R, A);
  std::vector<interval> C(n * n, interval());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      C[i * n + k] = (i == k ? interval(1.0) : interval(0.0)) - P(i, k);

  const auto image = [&](const interval_vector& E) {
    interval_vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      interval acc = Z[i];
      for (std::size_t k = 0; k < n; ++k) acc = acc + C[i * n + k] * E[k];
      out[i] = acc;
    }
    return out;
  };

  // verification: find E with K(E) strictly inside an inflation of E
  interval_vector E = Z;
  bool verified = false;
  for (int attempt = 0; attempt < 10 && !verified; ++attempt) {
    interval_vector Einf(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = 0.1 * width(E[i]) + 1e-12;
      Einf[i] = interval(detail::sub_down(E[i].lo(), w),
                         detail::add_up(E[i].hi(), w));
    }
    const interval_vector En = image(Einf);
    verified = true;
    for (std::size_t i = 0; i < n; ++i)
      verified = verified && En[i].lo() > Einf[i].lo() && En[i].hi() < Einf[i].hi();
    E = En;
  }
  if (!verified) return fail();

  // sharpen: the deviation set is a fixed point of the contraction, so
  // intersecting with its own image never loses a solution
  for (int it = 0; it < 100; ++it) {
    const interval_vector En = image(E);
    double change = 0.0;
    interval_vector Ei(n);
    for (std::size_t i = 0; i < n; ++i) {
      Ei[i] = intersect(En[i], E[i]);
      const double s = std::max(1.0, mag(E[i]));
      change = std::max(change, std::fabs(Ei[i].lo() - E[i].lo()) / s);
      change = std::max(change, std::fabs(Ei[i].hi() - E[i].hi()) / s);
    }
    E = Ei;
    if (change < 1e-13) break;
  }

  interval_vector x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = interval(detail::add_down(xt[i], E[i].lo()),
                    detail::add_up(xt[i], E[i].hi()));
  return x;
}

}  // namespace intdet
