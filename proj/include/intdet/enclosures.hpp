// Determinant enclosure methods.
//
// Every method returns a DetEnclosure whose value interval contains
// det(A') for each member matrix A'.  A method that cannot produce a
// bounded result reports failed = true and the value [-inf, inf].

#pragma once

#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "intdet/linalg.hpp"

namespace intdet {

enum class method_kind { ge, hadamard, gerschgorin, cramer, eig_sym };
enum class precond_kind { none, inv, lu, ldl };

inline const char* to_string(method_kind m) {
  switch (m) {
    case method_kind::ge: return "ge";
    case method_kind::hadamard: return "had";
    case method_kind::gerschgorin: return "gersch";
    case method_kind::cramer: return "cram";
    case method_kind::eig_sym: return "eig";
  }
  return "?";
}

inline const char* to_string(precond_kind k) {
  switch (k) {
    case precond_kind::none: return "none";
    case precond_kind::inv: return "inv";
    case precond_kind::lu: return "lu";
    case precond_kind::ldl: return "ldl";
  }
  return "?";
}

inline method_kind method_from_string(const std::string& s) {
  if (s == "ge") return method_kind::ge;
  if (s == "had") return method_kind::hadamard;
  if (s == "gersch") return method_kind::gerschgorin;
  if (s == "cram") return method_kind::cramer;
  if (s == "eig") return method_kind::eig_sym;
  throw std::invalid_argument("unknown method '" + s + "'");
}

inline precond_kind precond_from_string(const std::string& s) {
  if (s == "none") return precond_kind::none;
  if (s == "inv") return precond_kind::inv;
  if (s == "lu") return precond_kind::lu;
  if (s == "ldl") return precond_kind::ldl;
  throw std::invalid_argument("unknown preconditioner '" + s + "'");
}

struct det_stats {
  int row_swaps = 0;
  double min_pivot_mig = 0.0;
  int bunch_count = 0;
  int recursion_depth = 0;
  bool refined = false;
};

struct det_enclosure {
  interval value{0.0};
  method_kind method = method_kind::ge;
  precond_kind precond = precond_kind::none;
  bool failed = false;
  det_stats stats;
};

namespace detail {

inline det_enclosure failed_enclosure(method_kind m) {
  det_enclosure d;
  d.value = interval::entire();
  d.method = m;
  d.failed = true;
  return d;
}

}  // namespace detail

inline det_enclosure det_ge(const interval_matrix& A) {
  detail::ge_outcome r = detail::interval_ge_det(A.entries(), A.n());
  det_enclosure out;
  out.method = method_kind::ge;
  out.stats.row_swaps = r.swaps;
  out.stats.min_pivot_mig = r.failed ? 0.0 : r.min_pivot_mig;
  out.value = r.value;
  out.failed = r.failed;
  return out;
}

// |det| <= min over orientations of the product of row (column) norms; the
// norm factor for each row is the upper bound of the Euclidean norm over
// the box, so the enclosure is symmetric about zero by construction.
inline det_enclosure det_hadamard(const interval_matrix& A) {
  const std::size_t n = A.n();
  double rows = 1.0;
  double cols = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r2 = 0.0;
    double c2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double rm = mag(A(i, j));
      const double cm = mag(A(j, i));
      r2 = detail::add_up(r2, detail::mul_up(rm, rm));
      c2 = detail::add_up(c2, detail::mul_up(cm, cm));
    }
    rows = detail::mul_up(rows, detail::sqrt_up(r2));
    cols = detail::mul_up(cols, detail::sqrt_up(c2));
  }
  const double d = std::min(rows, cols);
  det_enclosure out;
  out.method = method_kind::hadamard;
  out.value = interval(-d, d);
  return out;
}

namespace detail {

// hull of { l^j * u^(k-j) : j = 0..k }, evaluated with outward rounding
inline interval power_products_hull(std::size_t k, const interval& range) {
  const interval l(range.lo());
  const interval u(range.hi());
  interval h(1.0);
  bool first = true;
  for (std::size_t j = 0; j <= k; ++j) {
    interval p(1.0);
    for (std::size_t t = 0; t < j; ++t) p = p * l;
    for (std::size_t t = j; t < k; ++t) p = p * u;
    h = first ? p : hull_of(h, p);
    first = false;
  }
  return h;
}

}  // namespace detail

// Product of eigenvalue bunches: Gerschgorin discs of the interval matrix
// are projected onto the real axis and merged into connected components; a
// component of k discs carries k eigenvalues (counting conjugate pairs),
// whose product ranges inside the hull of the endpoint powers l^j u^(k-j).
inline det_enclosure det_gerschgorin(const interval_matrix& A) {
  const std::size_t n = A.n();
  std::vector<interval> projections;
  projections.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = A.rad_matrix()(i, i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r = detail::add_up(r, mag(A(i, j)));
    const double c = A.mid_matrix()(i, i);
    projections.emplace_back(detail::sub_down(c, r), detail::add_up(c, r));
  }
  const std::vector<detail::bunch> comps =
      detail::connected_bunches(std::move(projections));
  interval value(1.0);
  for (const detail::bunch& b : comps)
    value = value * detail::power_products_hull(b.count, b.range);
  det_enclosure out;
  out.method = method_kind::gerschgorin;
  out.value = value;
  out.stats.bunch_count = int(comps.size());
  return out;
}

// det(A) is contained in det(A minus its first row and column) divided by
// the first component of the solution set of A x = e_1.  Applying the same
// step to the shrinking trailing blocks leaves a 1x1 determinant and a
// stack of divisors.  Any divisor that is unbounded or touches zero ends
// the method.
inline det_enclosure det_cramer(const interval_matrix& A) {
  det_enclosure out;
  out.method = method_kind::cramer;
  out.stats.recursion_depth = int(A.n());

  std::vector<interval> divisors;
  interval_matrix cur = A;
  while (cur.n() > 1) {
    interval_vector e(cur.n(), interval(0.0));
    e[0] = interval(1.0);
    const interval_vector x = krawczyk_solve(cur, e);
    const interval& x1 = x[0];
    if (!bounded(x1) || zero_in(x1)) return detail::failed_enclosure(method_kind::cramer);
    divisors.push_back(x1);
    cur = cur.trailing_minor();
  }
  interval value = cur(0, 0);
  for (const interval& d : divisors) value = value / d;
  out.value = value;
  out.stats.recursion_depth = int(A.n());
  return out;
}

// Eigenvalue perturbation enclosure for matrices with symmetric midpoint:
// every member is the symmetric midpoint plus a perturbation bounded
// entrywise by the symmetrized radius, so its eigenvalues stay within the
// spectral radius of that radius matrix of the midpoint's eigenvalues, and
// the determinant within the interval product of the widened eigenvalues.
inline det_enclosure det_eig_sym(const interval_matrix& A) {
  const std::size_t n = A.n();
  const real_matrix& Mc = A.mid_matrix();
  const real_matrix& Mr = A.rad_matrix();
  detail::require_symmetric(Mc, "det_eig_sym");
  const real_matrix S = detail::symmetric_part(Mc);

  // Symmetrizing the midpoint moves entry (i, j) by half the midpoint skew;
  // fold that shift into the radius so the symmetric model still covers the
  // original box.
  real_matrix D(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double skew =
          detail::sub_up(std::max(Mc(i, j), Mc(j, i)), std::min(Mc(i, j), Mc(j, i)));
      D(i, j) = detail::add_up(std::max(Mr(i, j), Mr(j, i)),
                               detail::mul_up(0.5, skew));
    }
  }

  const std::vector<interval> lam = sym_eig_enclosures(S);
  const double rho = spectral_radius_ub(D);
  const interval widen(-rho, rho);
  interval value(1.0);
  for (const interval& li : lam) value = value * (li + widen);

  det_enclosure out;
  out.method = method_kind::eig_sym;
  out.value = value;
  return out;
}

}  // namespace intdet
