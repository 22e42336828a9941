#include "gsp/sampler_design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gsp/error.hpp"
#include "gsp/linalg.hpp"
#include "gsp/random.hpp"

namespace gsp {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kMaxSubsets = 1e6;

void require_band(const SpectralDecomposition& decomp, Index k) {
  if (k < 1 || k > decomp.size()) {
    fail(ErrorCode::BandExceedsN, "bandwidth " + std::to_string(k) + " outside [1, " +
                                      std::to_string(decomp.size()) + "]");
  }
}

void require_count(Index n, Index m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "sample count must be at least 1");
  if (m > n) {
    fail(ErrorCode::TooMany, "cannot draw " + std::to_string(m) + " distinct samples from " +
                                 std::to_string(n) + " vertices");
  }
}

Matrix rows_of(const Matrix& basis, std::span<const Index> indices) {
  Matrix out(static_cast<Index>(indices.size()), basis.cols());
  for (Index i = 0; i < out.rows(); ++i) {
    const Index src = indices[static_cast<std::size_t>(i)];
    if (src < 0 || src >= basis.rows()) {
      fail(ErrorCode::OutOfRange, "index " + std::to_string(src) + " outside [0, " +
                                      std::to_string(basis.rows()) + ")");
    }
    out.row(i) = basis.row(src);
  }
  return out;
}

// Smallest of the min(rows, cols) singular values.
double smallest_singular_value(const Matrix& block) {
  const RealVector s = linalg::singular_values(block);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

double binomial(Index n, Index m) {
  double out = 1.0;
  for (Index i = 1; i <= m; ++i) out = out * static_cast<double>(n - m + i) / static_cast<double>(i);
  return out;
}

}  // namespace

double sigma_min_of_subset(const SpectralDecomposition& decomp, Index k,
                           std::span<const Index> indices) {
  require_band(decomp, k);
  const Matrix block = rows_of(decomp.v.leftCols(k), indices);
  if (block.rows() < k) return 0.0;
  return smallest_singular_value(block);
}

DesignResult greedy_optimal_sampler(const SpectralDecomposition& decomp, Index k, Index m) {
  require_band(decomp, k);
  const Index n = decomp.size();
  require_count(n, m);
  const Matrix basis = decomp.v.leftCols(k);

  DesignResult out;
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  Matrix selected(0, k);
  while (static_cast<Index>(out.indices.size()) < m) {
    Index best_index = -1;
    double best_score = -1.0;
    Matrix candidate(selected.rows() + 1, k);
    candidate.topRows(selected.rows()) = selected;
    for (Index i = 0; i < n; ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      candidate.bottomRows(1) = basis.row(i);
      const double score = smallest_singular_value(candidate);
      if (best_index < 0 || score > best_score + kTieTolerance * std::max(best_score, 1e-300)) {
        best_index = i;
        best_score = score;
      }
    }
    taken[static_cast<std::size_t>(best_index)] = true;
    out.indices.push_back(best_index);
    out.trace.push_back({best_index, best_score});
    selected.conservativeResize(selected.rows() + 1, Eigen::NoChange);
    selected.bottomRows(1) = basis.row(best_index);
  }
  // Scored on the sorted set so the value does not depend on pick order.
  std::vector<Index> sorted = out.indices;
  std::sort(sorted.begin(), sorted.end());
  out.sigma_min = sigma_min_of_subset(decomp, k, sorted);
  return out;
}

DesignResult brute_force_optimal_sampler(const SpectralDecomposition& decomp, Index k, Index m) {
  require_band(decomp, k);
  const Index n = decomp.size();
  require_count(n, m);
  if (binomial(n, m) > kMaxSubsets) {
    fail(ErrorCode::TooLarge, "C(" + std::to_string(n) + ", " + std::to_string(m) +
                                  ") exceeds the 1e6 subset budget");
  }

  std::vector<Index> subset(static_cast<std::size_t>(m));
  std::iota(subset.begin(), subset.end(), Index{0});
  DesignResult out;
  double best = -1.0;
  while (true) {
    const double score = sigma_min_of_subset(decomp, k, subset);
    if (score > best) {
      best = score;
      out.indices = subset;
    }
    // Next combination in lexicographic order.
    Index pos = m - 1;
    while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == n - m + pos) --pos;
    if (pos < 0) break;
    ++subset[static_cast<std::size_t>(pos)];
    for (Index j = pos + 1; j < m; ++j) {
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  out.sigma_min = best;
  out.trace.push_back({out.indices.back(), best});
  return out;
}

SamplingOperator random_sampler(Index n, Index m, Seed seed) {
  require_count(n, m);
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  Rng rng(seed);
  for (Index i = 0; i < m; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
  }
  pool.resize(static_cast<std::size_t>(m));
  return SamplingOperator(std::move(pool), n);
}

NoiseTrial noise_recovery_trial(const SpectralDecomposition& decomp, const Interpolator& interp,
                                const SamplingOperator& psi, const GraphSignal& x,
                                double noise_sigma, Seed seed) {
  if (!(noise_sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "noise sigma must be non-negative");
  if (interp.phi.cols() != psi.size() || interp.phi.rows() != decomp.size()) {
    fail(ErrorCode::DimensionMismatch, "interpolator does not match the sampling operator");
  }
  Rng rng(seed);
  Vector noise = Vector::Zero(psi.size());
  if (noise_sigma > 0.0) noise = gaussian_vector(psi.size(), rng, noise_sigma).cast<Complex>();

  NoiseTrial out;
  out.original = x;
  out.recovered = interpolate(interp, psi.apply(x.values) + noise);
  out.error_l2 = (out.recovered.values - x.values).norm();
  out.noise_l2 = noise.norm();
  out.bound = linalg::spectral_norm(decomp.v.leftCols(interp.k)) * linalg::spectral_norm(interp.u) *
              out.noise_l2;
  return out;
}

NoiseTrial noise_recovery_trial(const SpectralDecomposition& decomp, Index k,
                                const SamplingOperator& psi, double noise_sigma, Seed seed) {
  const Interpolator interp = build_interpolator(psi, decomp, k);
  Rng rng(derive_seed(seed, 0));
  const Vector coeffs = gaussian_vector(k, rng).cast<Complex>();
  const GraphSignal x{decomp.v.leftCols(k) * coeffs};
  return noise_recovery_trial(decomp, interp, psi, x, noise_sigma, derive_seed(seed, 1));
}

}  // namespace gsp
