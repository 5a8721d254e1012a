// Reproducible random interval matrices.
//
// The generator is splitmix64, fixed here so generated matrices are stable
// across platforms and library versions.  Each matrix draws from its own
// stream keyed on (seed, size, index), so a single matrix can be
// regenerated without replaying a whole run.

#pragma once

#include <cstdint>
#include <stdexcept>

#include "intdet/interval_matrix.hpp"

namespace intdet {

class splitmix64 {
 public:
  explicit splitmix64(std::uint64_t s) : state_(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // [0, 1) with 53 random bits
  double unit() { return double(next() >> 11) * 0x1p-53; }

  // [-1, 1)
  double symmetric_unit() { return 2.0 * unit() - 1.0; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t size,
                                std::uint64_t index) {
  splitmix64 a(seed);
  splitmix64 b(a.next() ^ size);
  splitmix64 c(b.next() ^ index);
  return c.next();
}

// Midpoints i.i.d. uniform on [-1, 1), every entry inflated by the same
// radius.  Symmetric mode copies the strict upper triangle to the lower
// one; the draw order is unchanged, so the upper triangle agrees with the
// general-mode matrix for the same key.
inline interval_matrix gen_random(std::size_t n, double radius,
                                  std::uint64_t seed, std::uint64_t index = 0,
                                  bool symmetric = false) {
  if (n == 0) throw std::invalid_argument("gen_random: empty matrix");
  if (!(radius >= 0.0)) throw std::invalid_argument("gen_random: negative radius");
  splitmix64 g(stream_key(seed, n, index));
  real_matrix C(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) C(i, j) = g.symmetric_unit();
  if (symmetric)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) C(j, i) = C(i, j);
  return interval_matrix::inflate(C, radius);
}

}  // namespace intdet
