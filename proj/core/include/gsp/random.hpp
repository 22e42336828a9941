#pragma once

#include <random>

#include "gsp/types.hpp"

namespace gsp {

using Rng = std::mt19937_64;

/// Stream seed for item `index` of a run seeded with `master` (splitmix64
/// finalizer), so per-trial streams do not depend on scheduling order.
constexpr Seed derive_seed(Seed master, Seed index) noexcept {
  Seed z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline RealVector gaussian_vector(Index n, Rng& rng, double sigma = 1.0) {
  std::normal_distribution<double> dist(0.0, sigma);
  RealVector out(n);
  for (Index i = 0; i < n; ++i) out(i) = dist(rng);
  return out;
}

}  // namespace gsp
