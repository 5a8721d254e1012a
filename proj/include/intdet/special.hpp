// Structured classes where the determinant range is computable exactly or
// a range endpoint is computable directly.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "intdet/linalg.hpp"

namespace intdet {

class tridiagonal_interval_matrix {
 public:
  tridiagonal_interval_matrix(interval_vector diag, interval_vector sub,
                              interval_vector super)
      : diag_(std::move(diag)), sub_(std::move(sub)), super_(std::move(super)) {
    if (diag_.empty())
      throw std::invalid_argument("tridiagonal_interval_matrix: empty diagonal");
    if (sub_.size() + 1 != diag_.size() || super_.size() + 1 != diag_.size())
      throw std::invalid_argument("tridiagonal_interval_matrix: band length mismatch");
    for (const interval_vector* v : {&diag_, &sub_, &super_})
      for (const interval& c : *v)
        if (!bounded(c))
          throw std::invalid_argument("tridiagonal_interval_matrix: unbounded entry");
  }

  std::size_t n() const { return diag_.size(); }
  const interval& diag(std::size_t i) const { return diag_[i]; }
  const interval& sub(std::size_t i) const { return sub_[i]; }      // (i+1, i)
  const interval& super(std::size_t i) const { return super_[i]; }  // (i, i+1)

  interval_matrix to_dense() const {
    const std::size_t m = n();
    std::vector<interval> e(m * m, interval(0.0));
    for (std::size_t i = 0; i < m; ++i) e[i * m + i] = diag_[i];
    for (std::size_t i = 0; i + 1 < m; ++i) {
      e[i * m + i + 1] = super_[i];
      e[(i + 1) * m + i] = sub_[i];
    }
    return interval_matrix(m, std::move(e));
  }

 private:
  interval_vector diag_;
  interval_vector sub_;
  interval_vector super_;
};

// H-matrix test through the comparison matrix <T> (mignitudes on the
// diagonal, negated magnitudes off it): T is an H-matrix iff <T> u > 0 for
// some positive u.  An approximate solve of <T> u = e proposes u, interval
// arithmetic certifies the product sign.
inline bool is_interval_h_matrix(const tridiagonal_interval_matrix& T) {
  const std::size_t n = T.n();
  real_matrix C(n);
  for (std::size_t i = 0; i < n; ++i) C(i, i) = mig(T.diag(i));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    C(i, i + 1) = -mag(T.super(i));
    C(i + 1, i) = -mag(T.sub(i));
  }

  std::vector<double> u;
  try {
    const detail::plu f = detail::lu_decompose(C);
    u = detail::lu_solve(f, std::vector<double>(n, 1.0));
  } catch (const singular_matrix_error&) {
    return false;
  }
  for (double v : u)
    if (!(v > 0.0) || !std::isfinite(v)) return false;

  for (std::size_t i = 0; i < n; ++i) {
    double lo = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      lo = detail::add_down(lo, detail::mul_down(C(i, j), u[j]));
    if (!(lo > 0.0)) return false;
  }
  return true;
}

// Exact determinant range (up to outward rounding) of a tridiagonal
// interval H-matrix.
//
// After flipping rows so all diagonal intervals are positive, every leading
// minor of every member is positive and the three-term recursion
//   D_k = a_k D_{k-1} - (b c)_{k-1} D_{k-2}
// is monotone: increasing in each a_k, decreasing in each product
// (b c)_k.  The range endpoints are therefore attained at the parameter
// vertices (upper a with lower products, and vice versa); each endpoint
// recursion is evaluated in interval arithmetic so rounding stays outward.
inline interval det_tridiag_h(const tridiagonal_interval_matrix& T) {
  if (!is_interval_h_matrix(T))
    throw std::invalid_argument("det_tridiag_h: input is not an interval H-matrix");
  const std::size_t n = T.n();

  std::vector<interval> a(n), p(n > 1 ? n - 1 : 0);
  int sgn = 1;
  std::vector<int> row_flip(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = T.diag(i);
    if (a[i].hi() < 0.0) {
      a[i] = -a[i];
      row_flip[i] = -1;
      sgn = -sgn;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    interval b = T.super(i);
    interval c = T.sub(i);
    if (row_flip[i] < 0) b = -b;
    if (row_flip[i + 1] < 0) c = -c;
    p[i] = b * c;
  }

  const auto endpoint_recursion = [&](bool upper) {
    interval prev2(1.0);
    interval prev1(upper ? a[0].hi() : a[0].lo());
    for (std::size_t k = 1; k < n; ++k) {
      const interval ak(upper ? a[k].hi() : a[k].lo());
      const interval pk(upper ? p[k - 1].lo() : p[k - 1].hi());
      const interval cur = ak * prev1 - pk * prev2;
      prev2 = prev1;
      prev1 = cur;
    }
    return prev1;
  };

  const interval up = endpoint_recursion(true);
  const interval dn = endpoint_recursion(false);
  const interval range(dn.lo(), up.hi());
  return (sgn > 0) ? range : -range;
}

// Minimum determinant over a box with identity midpoint and contractive
// radius: the minimum is attained at the all-lower-bounds vertex, so a
// verified determinant of that single point matrix is the answer.
inline interval min_det_midpoint_identity(const interval_matrix& A) {
  const std::size_t n = A.n();
  const real_matrix& Mc = A.mid_matrix();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (Mc(i, j) != (i == j ? 1.0 : 0.0))
        throw std::invalid_argument(
            "min_det_midpoint_identity: midpoint must be exactly the identity");
  const double rho = spectral_radius_ub(A.rad_matrix());
  if (!(rho < 1.0))
    throw std::invalid_argument(
        "min_det_midpoint_identity: radius matrix must have spectral radius below 1");
  real_matrix V(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) V(i, j) = A(i, j).lo();
  return verified_point_det(V);
}

struct spd_max_result {
  interval value;                      // verified determinant at the maximizer
  real_matrix argmax;                  // symmetric member attaining it
  std::vector<double> objective_path;  // log det after each accepted step
};

namespace detail {

// Cholesky-based log det and inverse; callers guarantee positive
// definiteness, a breakdown here is a logic error upstream.
inline real_matrix cholesky(const real_matrix& S) {
  const std::size_t n = S.n();
  real_matrix L(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = S(j, j);
    for (std::size_t k = 0; k < j; ++k) v -= L(j, k) * L(j, k);
    if (!(v > 0.0)) throw std::runtime_error("cholesky: matrix is not positive definite");
    L(j, j) = std::sqrt(v);
    for (std::size_t i = j + 1; i < n; ++i) {
      double w = S(i, j);
      for (std::size_t k = 0; k < j; ++k) w -= L(i, k) * L(j, k);
      L(i, j) = w / L(j, j);
    }
  }
  return L;
}

inline double logdet_from_chol(const real_matrix& L) {
  double f = 0.0;
  for (std::size_t i = 0; i < L.n(); ++i) f += std::log(L(i, i));
  return 2.0 * f;
}

inline real_matrix inverse_from_chol(const real_matrix& L) {
  const std::size_t n = L.n();
  real_matrix inv(n);
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = (i == j) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) y[i] -= L(i, k) * y[k];
      y[i] /= L(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t k = ii + 1; k < n; ++k) y[ii] -= L(k, ii) * y[k];
      y[ii] /= L(ii, ii);
      inv(ii, j) = y[ii];
    }
  }
  return inv;
}

}  // namespace detail

// Maximum determinant over the symmetric members of a box verified to be
// positive definite throughout (lambda_min of the symmetric midpoint must
// exceed the spectral radius of the radius matrix).  log det is concave on
// that set, so projected gradient ascent with an Armijo line search finds
// the maximizer; the returned value is a verified determinant enclosure at
// the final iterate.
inline spd_max_result max_det_spd(const interval_matrix& A) {
  const std::size_t n = A.n();

  // symmetric part of the box: entry (i, j) must agree with (j, i)
  real_matrix blo(n), bhi(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      blo(i, j) = std::max(A(i, j).lo(), A(j, i).lo());
      bhi(i, j) = std::min(A(i, j).hi(), A(j, i).hi());
      if (!(blo(i, j) <= bhi(i, j)))
        throw std::invalid_argument("max_det_spd: box has no symmetric members");
    }
  }
  real_matrix Sc(n), Sd(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const interval c(blo(i, j), bhi(i, j));
      Sc(i, j) = mid(c);
      Sd(i, j) = rad(c);
    }
  // make the center exactly symmetric (mid() of equal intervals is equal,
  // but keep this independent of that detail)
  Sc = detail::symmetric_part(Sc);

  const std::vector<interval> lam = sym_eig_enclosures(Sc);
  const double rho = spectral_radius_ub(Sd);
  if (!(lam.back().lo() > rho))
    throw std::invalid_argument(
        "max_det_spd: could not verify positive definiteness over the box");

  real_matrix X = Sc;
  real_matrix L = detail::cholesky(X);
  double f = detail::logdet_from_chol(L);
  spd_max_result out{interval(0.0), X, {f}};

  const auto project = [&](const real_matrix& Y) {
    real_matrix P(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        P(i, j) = std::clamp(Y(i, j), blo(i, j), bhi(i, j));
    return P;
  };

  for (int it = 0; it < 10000; ++it) {
    const real_matrix G = detail::inverse_from_chol(L);  // gradient of log det

    // projected gradient: zero where the box blocks movement
    double pg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double gij = G(i, j);
        if (X(i, j) >= bhi(i, j) && gij > 0.0) gij = 0.0;
        if (X(i, j) <= blo(i, j) && gij < 0.0) gij = 0.0;
        pg = std::max(pg, std::fabs(gij));
      }
    if (pg < 1e-9) break;

    bool accepted = false;
    for (double alpha = 1.0; alpha > 1e-18; alpha *= 0.5) {
      real_matrix Y(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Y(i, j) = X(i, j) + alpha * G(i, j);
      Y = project(Y);
      double gain = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gain += G(i, j) * (Y(i, j) - X(i, j));
      if (gain <= 0.0) continue;
      const real_matrix Ly = detail::cholesky(Y);  // members stay SPD
      const double fy = detail::logdet_from_chol(Ly);
      if (fy >= f + 1e-4 * gain) {
        X = Y;
        L = Ly;
        f = fy;
        out.objective_path.push_back(f);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (pg > 1e-6)
        throw std::runtime_error("max_det_spd: line search failed before convergence");
      break;
    }
  }

  out.argmax = X;
  out.value = verified_point_det(X);
  return out;
}

}  // namespace intdet
