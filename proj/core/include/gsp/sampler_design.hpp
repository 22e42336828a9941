#pragma once

#include <span>
#include <vector>

#include "gsp/sampling.hpp"

namespace gsp {

struct DesignStep {
  Index index = 0;
  double score = 0.0;  // greedy objective after adding `index`
};

struct DesignResult {
  std::vector<Index> indices;
  double sigma_min = 0.0;  // sigma_min_of_subset(decomp, k, indices)
  std::vector<DesignStep> trace;

  SamplingOperator op(Index n) const { return SamplingOperator(indices, n); }
};

/// k-th singular value of the |indices| x k row block of V_(K); 0 when fewer
/// than k rows are selected.
double sigma_min_of_subset(const SpectralDecomposition& decomp, Index k,
                           std::span<const Index> indices);

/// Greedy design that grows the sample set one vertex at a time, picking the
/// candidate whose addition maximizes the smallest singular value of the
/// selected rows of V_(K).
///
/// While fewer than k rows are selected, a candidate set is scored by the
/// smallest of its min(rows, k) singular values rather than by the
/// identically-zero k-th one, so early steps still discriminate. Scores within
/// a relative 1e-12 of each other count as ties and go to the smallest index.
DesignResult greedy_optimal_sampler(const SpectralDecomposition& decomp, Index k, Index m);

/// Exhaustive argmax of sigma_min over all m-subsets (lexicographic order,
/// first maximum wins). Throws TooLarge above 1e6 subsets.
DesignResult brute_force_optimal_sampler(const SpectralDecomposition& decomp, Index k, Index m);

/// Uniform m-subset of 0..n-1 without replacement, in draw order.
SamplingOperator random_sampler(Index n, Index m, Seed seed);

struct NoiseTrial {
  GraphSignal original;
  GraphSignal recovered;
  double error_l2 = 0.0;  // ||x' - x||_2 = ||Phi e||_2
  double noise_l2 = 0.0;  // ||e||_2
  double bound = 0.0;     // ||V_(K)||_2 ||U||_2 ||e||_2
};

/// Samples `x` through psi, adds i.i.d. N(0, sigma^2) noise to every sample
/// and interpolates.
NoiseTrial noise_recovery_trial(const SpectralDecomposition& decomp, const Interpolator& interp,
                                const SamplingOperator& psi, const GraphSignal& x,
                                double noise_sigma, Seed seed);

/// Same, with x drawn as V_(K) times a standard normal coefficient vector.
/// Throws NotQualified.
NoiseTrial noise_recovery_trial(const SpectralDecomposition& decomp, Index k,
                                const SamplingOperator& psi, double noise_sigma, Seed seed);

}  // namespace gsp
