#pragma once

#include <vector>

#include "gsp/graph_core.hpp"

namespace gsp {

/// Ordered selection of vertex indices (0-based). Row i of the operator has a
/// single one in column indices()[i].
class SamplingOperator {
 public:
  /// Throws DuplicateIndex, OutOfRange, or InvalidArgument (empty selection).
  SamplingOperator(std::vector<Index> indices, Index n);

  Index ambient_size() const noexcept { return n_; }
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  const std::vector<Index>& indices() const noexcept { return indices_; }

  Vector apply(const Vector& x) const;
  /// Rows of `m` at the sampled indices, in order.
  Matrix select_rows(const Matrix& m) const;
  /// Dense M x N 0/1 matrix.
  RealMatrix matrix() const;

 private:
  std::vector<Index> indices_;
  Index n_;
};

SamplingOperator make_sampling_operator(std::vector<Index> indices, Index n);

/// x_M[i] = x[indices[i]].
Vector apply_sampling(const SamplingOperator& psi, const GraphSignal& x);

/// Singular values of Psi V_(K) above this fraction of ||V_(K)||_2 count toward rank.
inline constexpr double kRankTolerance = 1e-10;

/// rank(Psi V_(K)) == k. Always false when fewer than k samples are taken.
bool is_qualified(const SamplingOperator& psi, const SpectralDecomposition& decomp, Index k);

/// Phi = V_(K) U with U Psi V_(K) = I_K.
struct Interpolator {
  Matrix phi;  // N x M
  Matrix u;    // K x M
  Index k = 0;
  double condition = 0.0;  // cond(Psi V_(K))
  bool ill_conditioned = false;  // condition above 1e12; still usable, recovery may be noisy
};

/// U is the inverse of Psi V_(K) for M == K and its pseudo-inverse for M > K.
/// Throws NotQualified.
Interpolator build_interpolator(const SamplingOperator& psi, const SpectralDecomposition& decomp,
                                Index k);

GraphSignal interpolate(const Interpolator& interp, const Vector& x_m);

/// The K x K shift supporting the sampled coefficients: A_M = U^-1 Lambda_(K) U.
struct SampledGraph {
  Matrix shift;
  Matrix u_inv;  // Psi V_(K), the sampled inverse graph Fourier transform
  Matrix u;      // its inverse, the sampled graph Fourier transform
  Vector lambda_k;

  Index size() const noexcept { return shift.rows(); }
};

/// Requires exactly M == K samples; callers holding more samples pick K of
/// them first. Throws NotQualified or SampleCountMismatch.
SampledGraph sampled_graph_shift(const SamplingOperator& psi, const SpectralDecomposition& decomp,
                                 Index k);

/// ||x_hat tail beyond k||_2 / ||x_hat||_2 (0 for the zero signal).
double band_tail_ratio(const SpectralDecomposition& decomp, const GraphSignal& x, Index k);

/// Tail ratio at most tol.
bool is_bandlimited(const SpectralDecomposition& decomp, const GraphSignal& x, Index k,
                    double tol = 1e-8);

struct PreservationCheck {
  double residual = 0.0;    // ||(x_M - A_M x_M) - Psi (x - A x)||_2
  bool bandlimited = true;  // false when x carries content beyond the band
};

/// Compares the first-order difference on the sampled graph against the
/// sampled first-order difference on the original graph.
PreservationCheck difference_preservation_residual(const SamplingOperator& psi,
                                                   const SpectralDecomposition& decomp, Index k,
                                                   const GraphShift& shift, const GraphSignal& x);

}  // namespace gsp
