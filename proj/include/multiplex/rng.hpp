#pragma once

#include "multiplex/types.hpp"

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>

namespace multiplex {

/// SplitMix64 finalizer; derives independent stream seeds from one user seed
/// so that restart r of any run is reproducible in isolation.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded generator with platform-independent real/integer draws.
/// std::mt19937_64 output is fully specified by the standard; the
/// distributions below avoid std::uniform_*_distribution, whose mapping is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Rejection sampling keeps the draw unbiased.
  std::uint64_t below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniform draw from the (k-1)-simplex: normalized exponentials.
inline Vector simplex_row(Rng& rng, Index k) {
  Vector row(k);
  for (Index i = 0; i < k; ++i) {
    double u = rng.uniform();
    row[i] = -std::log1p(-u);  // Exp(1); u < 1 so the log stays finite
  }
  double total = row.sum();
  if (total <= 0.0) return Vector::Constant(k, 1.0 / static_cast<double>(k));
  return row / total;
}

}  // namespace multiplex
