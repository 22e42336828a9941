#pragma once

#include <span>
#include <vector>

#include "gsp/sampling.hpp"

namespace gsp {

/// Unweighted Erdos-Renyi graph: every pair (ordered pair when directed) is an
/// edge with probability p, no self loops. Throws BadP outside [0, 1].
GraphShift gen_erdos_renyi(Index n, double p, Seed seed, bool directed = false,
                           bool normalize = true);

/// Random geometric graph on n points uniform in the unit square; vertices are
/// adjacent when their distance is below `radius`.
GraphShift sensor_graph(Index n, double radius, Seed seed, bool normalize = true);

struct ErConfig {
  Index n = 50;
  double p = 0.3;
  Index trials = 100;
  Index k = 10;
  Seed seed = 1;
};

struct SuccessPoint {
  double p = 0.0;
  double rate = 0.0;  // successes / trials
  Index successes = 0;
  Index trials = 0;
  Index defective = 0;  // trials whose graph could not be decomposed
};

struct SuccessCurve {
  Index n = 0;
  Index k = 0;
  Index trials = 0;
  std::vector<SuccessPoint> points;
};

/// Fraction of random graphs for which a uniformly random k-subset of rows of
/// V_(K) has full rank. Trial t uses the stream derive_seed(seed, t).
/// Throws DecompositionFailuresExceeded when over 10% of trials are defective.
SuccessPoint success_rate(const ErConfig& cfg);

/// success_rate at each p with a shared master seed.
SuccessCurve success_curve(Index n, Index k, std::span<const double> p_grid, Index trials,
                           Seed seed);

struct FrameBoundReport {
  Index m = 0;
  std::vector<double> deviations;  // ||(1/M) B^H B - I||_2 per trial, B = Psi V_(K)
  double max_deviation = 0.0;
  double fraction_within_half = 0.0;
  double lower_frame_bound = 0.0;  // M (1 - max_deviation)
  double upper_frame_bound = 0.0;  // M (1 + max_deviation)
  bool conjugate_transpose = false;  // V was complex, B^H used instead of B^T
};

/// Rescales an orthogonal eigenbasis so V^H V = N I. Throws ScalingUnavailable
/// when the columns are not mutually orthogonal.
SpectralDecomposition frame_scaled(const SpectralDecomposition& decomp);

/// Expects V^H V = N I (see frame_scaled); throws ScalingUnavailable otherwise.
FrameBoundReport frame_bound_check(const SpectralDecomposition& decomp, Index k, Index m,
                                   Index trials, Seed seed);

/// N x N cyclic permutation: (A x)_i = x_{i-1 mod N}.
GraphShift cyclic_shift(Index n);

/// Closed-form Fourier basis of the cyclic shift: V = DFT^*, V^-1 = DFT,
/// eigenvalue k = W^k with W = exp(-2 pi j / N).
SpectralDecomposition cyclic_decomposition(Index n);

/// Even-indexed slots first, then odd-indexed.
std::vector<Index> even_first_permutation(Index n);

/// Checks rank(Psi DFT^*_(K)) = K for the given indices and that a random
/// BL_K time signal is recovered within 1e-8. False on failure (or M < K).
bool dft_sampling_check(Index n, Index k, std::span<const Index> indices, Seed seed = 0);

/// Cyclic graph, even-first spectrum, first n/2 vertices sampled. The result
/// is the n/2 cyclic permutation matrix. Throws OddN.
SampledGraph cyclic_downsample_demo(Index n);

/// Every intermediate of the five-node directed sampling walkthrough.
struct Walkthrough {
  GraphShift shift;
  SpectralDecomposition decomp;  // column signs aligned to the reference basis
  Index k = 0;
  Vector x_hat;
  GraphSignal x;
  GraphSignal difference;  // x - A x
  std::vector<Index> indices;
  Vector x_m;
  Interpolator interp;
  SampledGraph sampled;
  Vector sampled_difference;  // x_M - A_M x_M
  GraphSignal recovered;
  double sigma_min = 0.0;
};

/// Five-node directed shift, K = 3, x_hat = (0.5, 0.2, 0.1, 0, 0), samples at
/// vertices 0, 1, 3.
Walkthrough five_node_walkthrough();
GraphShift five_node_shift();

}  // namespace gsp
