#pragma once

#include <cmath>
#include <cstdint>

#include "symsector/types.hpp"

namespace symsector {

/// Deterministic, platform-independent generator (splitmix64 core) so that a
/// given seed reproduces the same stream everywhere, independent of the
/// standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal (Box-Muller, one value per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.28318530717958647692 * u2);
  }

  /// Derives a decorrelated seed for stream `index`; used to give each
  /// sample chunk its own generator so results do not depend on how chunks
  /// are scheduled.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline Vector normal_vector(Rng& rng, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

inline Matrix normal_matrix(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

/// Haar-ish random orthogonal matrix via QR of a Gaussian matrix.
inline Matrix random_orthogonal(Rng& rng, Index n) {
  Matrix g = normal_matrix(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

/// Random symmetric matrix with spectrum drawn uniformly from [lo, hi].
inline Matrix random_spectrum(Rng& rng, Index n, double lo, double hi) {
  Matrix q = random_orthogonal(rng, n);
  Vector lam(n);
  for (Index i = 0; i < n; ++i) lam(i) = rng.uniform(lo, hi);
  return symmetrized(q * lam.asDiagonal() * q.transpose());
}

}  // namespace symsector
