// Interval scalar with outward rounding.
//
// Endpoints are doubles; lo may be -inf and hi may be +inf, so unbounded
// results of failed verifications are first-class values.  NaN never
// appears in a valid interval.  All arithmetic rounds outward, so for any
// op the exact result set over the operand intervals is contained in the
// computed interval.

#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace intdet {

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMaxFinite = std::numeric_limits<double>::max();

// Adjacent representable doubles via the monotone bit encoding.
// next_float(+inf) stays +inf and prev_float(-inf) stays -inf, so widening
// an already infinite bound is harmless.
inline double next_float(double x) {
  if (std::isnan(x) || x == kInf) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  auto bits = std::bit_cast<std::uint64_t>(x);
  bits += (x > 0.0) ? std::uint64_t(1) : std::uint64_t(-1);
  return std::bit_cast<double>(bits);
}

inline double prev_float(double x) {
  if (std::isnan(x) || x == -kInf) return x;
  if (x == 0.0) return -std::numeric_limits<double>::denorm_min();
  auto bits = std::bit_cast<std::uint64_t>(x);
  bits += (x > 0.0) ? std::uint64_t(-1) : std::uint64_t(1);
  return std::bit_cast<double>(bits);
}

// Directed scalar kernels.  Each evaluates in round-to-nearest and decides
// from an exactly representable residual on which side of the computed
// value the exact result lies; only then is one ulp of widening applied.
// Where the residual is not guaranteed exact (overflow, deep underflow)
// the result is widened unconditionally, which is always sound.

inline double add_down(double a, double b) {
  const double z = a + b;
  assert(!std::isnan(z));
  if (z == kInf) return (a == kInf || b == kInf) ? kInf : kMaxFinite;
  if (z == -kInf) return -kInf;
  // TwoSum residual, exact whenever z is finite.
  const double bv = z - a;
  const double av = z - bv;
  const double br = b - bv;
  const double ar = a - av;
  return (ar + br < 0.0) ? prev_float(z) : z;
}

inline double add_up(double a, double b) {
  const double z = a + b;
  assert(!std::isnan(z));
  if (z == -kInf) return (a == -kInf || b == -kInf) ? -kInf : -kMaxFinite;
  if (z == kInf) return kInf;
  const double bv = z - a;
  const double av = z - bv;
  const double br = b - bv;
  const double ar = a - av;
  return (ar + br > 0.0) ? next_float(z) : z;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// 0 * x is 0 even for infinite x: an infinite endpoint only stands for
// unboundedness of the other operand's range, and 0 times any finite
// member is 0.
inline double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double z = a * b;
  assert(!std::isnan(z));
  if (z == kInf) return (std::isinf(a) || std::isinf(b)) ? kInf : kMaxFinite;
  if (z == -kInf) return -kInf;
  if (std::fabs(z) >= 0x1p-960) {
    const double r = std::fma(a, b, -z);  // exact: a*b - z
    return (r < 0.0) ? prev_float(z) : z;
  }
  return prev_float(z);
}

inline double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double z = a * b;
  assert(!std::isnan(z));
  if (z == -kInf) return (std::isinf(a) || std::isinf(b)) ? -kInf : -kMaxFinite;
  if (z == kInf) return kInf;
  if (std::fabs(z) >= 0x1p-960) {
    const double r = std::fma(a, b, -z);
    return (r > 0.0) ? next_float(z) : z;
  }
  return next_float(z);
}

// Quotient kernels; callers guarantee b != 0.  An inf/inf candidate stands
// for the limit where the numerator grows faster, so it keeps the sign of
// the quotient.
inline double div_down(double a, double b) {
  assert(b != 0.0);
  if (a == 0.0) return 0.0;
  if (std::isinf(a) && std::isinf(b))
    return (std::signbit(a) == std::signbit(b)) ? kInf : -kInf;
  const double z = a / b;
  assert(!std::isnan(z));
  if (z == kInf) return std::isinf(a) ? kInf : kMaxFinite;
  if (z == -kInf) return -kInf;
  const double az = std::fabs(z);
  const double aa = std::fabs(a);
  const double ab = std::fabs(b);
  if (az >= 0x1p-960 && az <= 0x1p960 && aa >= 0x1p-960 && aa <= 0x1p960 &&
      ab >= 0x1p-960 && ab <= 0x1p960) {
    const double r = std::fma(-z, b, a);  // exact: a - z*b
    const bool below = (b > 0.0) ? (r < 0.0) : (r > 0.0);
    return below ? prev_float(z) : z;
  }
  return prev_float(z);
}

inline double div_up(double a, double b) {
  assert(b != 0.0);
  if (a == 0.0) return 0.0;
  if (std::isinf(a) && std::isinf(b))
    return (std::signbit(a) == std::signbit(b)) ? kInf : -kInf;
  const double z = a / b;
  assert(!std::isnan(z));
  if (z == -kInf) return std::isinf(a) ? -kInf : -kMaxFinite;
  if (z == kInf) return kInf;
  const double az = std::fabs(z);
  const double aa = std::fabs(a);
  const double ab = std::fabs(b);
  if (az >= 0x1p-960 && az <= 0x1p960 && aa >= 0x1p-960 && aa <= 0x1p960 &&
      ab >= 0x1p-960 && ab <= 0x1p960) {
    const double r = std::fma(-z, b, a);
    const bool above = (b > 0.0) ? (r > 0.0) : (r < 0.0);
    return above ? next_float(z) : z;
  }
  return next_float(z);
}

inline double sqrt_down(double a) {
  assert(a >= 0.0);
  if (a == 0.0) return 0.0;
  if (a == kInf) return kInf;
  const double z = std::sqrt(a);
  if (z >= 0x1p-500 && a >= 0x1p-500) {
    const double r = std::fma(z, z, -a);  // exact: z*z - a
    return (r > 0.0) ? prev_float(z) : z;
  }
  return prev_float(z);
}

inline double sqrt_up(double a) {
  assert(a >= 0.0);
  if (a == 0.0) return 0.0;
  if (a == kInf) return kInf;
  const double z = std::sqrt(a);
  if (z >= 0x1p-500 && a >= 0x1p-500) {
    const double r = std::fma(z, z, -a);
    return (r < 0.0) ? next_float(z) : z;
  }
  return next_float(z);
}

}  // namespace detail

class interval {
 public:
  interval() : lo_(0.0), hi_(0.0) {}
  explicit interval(double x) : interval(x, x) {}
  interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo <= hi) ||
        lo == detail::kInf || hi == -detail::kInf)
      throw std::invalid_argument("interval: invalid bounds");
  }

  static interval entire() { return interval(-detail::kInf, detail::kInf); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

inline bool bounded(const interval& a) {
  return a.lo() != -detail::kInf && a.hi() != detail::kInf;
}

inline bool is_point(const interval& a) { return a.lo() == a.hi(); }

inline bool contains(const interval& a, double x) {
  return a.lo() <= x && x <= a.hi();
}

// a is a subset of b
inline bool subset(const interval& a, const interval& b) {
  return b.lo() <= a.lo() && a.hi() <= b.hi();
}

inline bool zero_in(const interval& a) { return a.lo() <= 0.0 && 0.0 <= a.hi(); }

inline bool zero_in_interior(const interval& a) {
  return a.lo() < 0.0 && 0.0 < a.hi();
}

inline interval hull_of(const interval& a, const interval& b) {
  return interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

inline interval intersect(const interval& a, const interval& b) {
  const double lo = std::max(a.lo(), b.lo());
  const double hi = std::min(a.hi(), b.hi());
  if (!(lo <= hi)) throw std::domain_error("intersect: empty intersection");
  return interval(lo, hi);
}

// magnitude: largest absolute value of a member
inline double mag(const interval& a) {
  return std::max(std::fabs(a.lo()), std::fabs(a.hi()));
}

// mignitude: smallest absolute value of a member
inline double mig(const interval& a) {
  if (zero_in(a)) return 0.0;
  return std::min(std::fabs(a.lo()), std::fabs(a.hi()));
}

// upper bound on hi - lo
inline double width(const interval& a) { return detail::sub_up(a.hi(), a.lo()); }

inline double mid(const interval& a) {
  if (!bounded(a)) throw std::domain_error("mid: unbounded interval");
  double m = 0.5 * (a.lo() + a.hi());
  if (!std::isfinite(m)) m = 0.5 * a.lo() + 0.5 * a.hi();
  return std::clamp(m, a.lo(), a.hi());
}

// upper bound on the radius around mid(a); [mid - rad, mid + rad] covers a
inline double rad(const interval& a) {
  const double m = mid(a);
  return std::max(detail::sub_up(m, a.lo()), detail::sub_up(a.hi(), m));
}

inline interval operator-(const interval& a) { return interval(-a.hi(), -a.lo()); }

inline interval operator+(const interval& a, const interval& b) {
  return interval(detail::add_down(a.lo(), b.lo()), detail::add_up(a.hi(), b.hi()));
}

inline interval operator-(const interval& a, const interval& b) {
  return interval(detail::sub_down(a.lo(), b.hi()), detail::sub_up(a.hi(), b.lo()));
}

inline interval operator*(const interval& a, const interval& b) {
  const double lo = std::min({detail::mul_down(a.lo(), b.lo()),
                              detail::mul_down(a.lo(), b.hi()),
                              detail::mul_down(a.hi(), b.lo()),
                              detail::mul_down(a.hi(), b.hi())});
  const double hi = std::max({detail::mul_up(a.lo(), b.lo()),
                              detail::mul_up(a.lo(), b.hi()),
                              detail::mul_up(a.hi(), b.lo()),
                              detail::mul_up(a.hi(), b.hi())});
  return interval(lo, hi);
}

// Division follows the extended quotient set.  A divisor with 0 in the
// interior yields the whole line; a divisor touching 0 at one endpoint
// yields a half-line; [0, 0] has an empty quotient set and is an error.
inline interval operator/(const interval& a, const interval& b) {
  if (b.lo() == 0.0 && b.hi() == 0.0)
    throw std::domain_error("interval division by [0, 0]");
  if (zero_in_interior(b)) return interval::entire();
  if (!zero_in(b)) {
    const double lo = std::min({detail::div_down(a.lo(), b.lo()),
                                detail::div_down(a.lo(), b.hi()),
                                detail::div_down(a.hi(), b.lo()),
                                detail::div_down(a.hi(), b.hi())});
    const double hi = std::max({detail::div_up(a.lo(), b.lo()),
                                detail::div_up(a.lo(), b.hi()),
                                detail::div_up(a.hi(), b.lo()),
                                detail::div_up(a.hi(), b.hi())});
    return interval(lo, hi);
  }
  if (a.lo() == 0.0 && a.hi() == 0.0) return interval(0.0);
  if (b.lo() == 0.0) {
    // b = [0, d], d > 0: quotients of positive members blow up toward +inf
    if (a.lo() > 0.0) return interval(detail::div_down(a.lo(), b.hi()), detail::kInf);
    if (a.lo() == 0.0) return interval(0.0, detail::kInf);
    if (a.hi() < 0.0) return interval(-detail::kInf, detail::div_up(a.hi(), b.hi()));
    if (a.hi() == 0.0) return interval(-detail::kInf, 0.0);
    return interval::entire();
  }
  // b = [c, 0], c < 0
  if (a.lo() > 0.0) return interval(-detail::kInf, detail::div_up(a.lo(), b.lo()));
  if (a.lo() == 0.0) return interval(-detail::kInf, 0.0);
  if (a.hi() < 0.0) return interval(detail::div_down(a.hi(), b.lo()), detail::kInf);
  if (a.hi() == 0.0) return interval(0.0, detail::kInf);
  return interval::entire();
}

// t * a with outward rounding, cheaper than interval(t) * a
inline interval scale(double t, const interval& a) {
  if (t >= 0.0)
    return interval(detail::mul_down(t, a.lo()), detail::mul_up(t, a.hi()));
  return interval(detail::mul_down(t, a.hi()), detail::mul_up(t, a.lo()));
}

inline std::ostream& operator<<(std::ostream& os, const interval& a) {
  return os << '[' << a.lo() << ", " << a.hi() << ']';
}

using interval_vector = std::vector<interval>;

// Two-sided enclosure of the Euclidean norm over all member vectors: the
// lower endpoint sums squared mignitudes rounded down, the upper endpoint
// squared magnitudes rounded up.
inline interval norm(const interval_vector& x) {
  if (x.empty()) throw std::invalid_argument("norm: empty vector");
  double lo = 0.0;
  double hi = 0.0;
  for (const interval& c : x) {
    const double lm = mig(c);
    const double hm = mag(c);
    lo = detail::add_down(lo, detail::mul_down(lm, lm));
    hi = detail::add_up(hi, detail::mul_up(hm, hm));
  }
  return interval(detail::sqrt_down(lo), detail::sqrt_up(hi));
}

}  // namespace intdet
