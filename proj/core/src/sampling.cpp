#include "gsp/sampling.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/LU>

#include "gsp/error.hpp"
#include "gsp/linalg.hpp"

namespace gsp {

namespace {

constexpr double kIllConditioned = 1e12;

void require_band(const SpectralDecomposition& decomp, Index k) {
  if (k < 1 || k > decomp.size()) {
    fail(ErrorCode::BandExceedsN, "bandwidth " + std::to_string(k) + " outside [1, " +
                                      std::to_string(decomp.size()) + "]");
  }
}

void require_ambient(const SamplingOperator& psi, const SpectralDecomposition& decomp) {
  if (psi.ambient_size() != decomp.size()) {
    fail(ErrorCode::DimensionMismatch, "sampling operator acts on " +
                                           std::to_string(psi.ambient_size()) +
                                           " vertices, graph has " + std::to_string(decomp.size()));
  }
}

Matrix sampled_band(const SamplingOperator& psi, const SpectralDecomposition& decomp, Index k) {
  require_band(decomp, k);
  require_ambient(psi, decomp);
  return psi.select_rows(decomp.v.leftCols(k));
}

// Rank of Psi V_(K) with the cut taken against ||V_(K)||_2, so a block that is
// uniformly tiny does not count as full rank.
Index sampled_rank(const Matrix& sampled, const SpectralDecomposition& decomp, Index k) {
  const RealVector s = linalg::singular_values(sampled);
  const double cut = kRankTolerance * linalg::spectral_norm(decomp.v.leftCols(k));
  return static_cast<Index>(std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

void require_qualified(const Matrix& sampled, const SpectralDecomposition& decomp, Index k) {
  if (sampled.rows() < k || sampled_rank(sampled, decomp, k) != k) {
    fail(ErrorCode::NotQualified,
         "rank of Psi V_(K) is below K=" + std::to_string(k) + " for the chosen samples");
  }
}

}  // namespace

SamplingOperator::SamplingOperator(std::vector<Index> indices, Index n)
    : indices_(std::move(indices)), n_(n) {
  if (indices_.empty()) fail(ErrorCode::InvalidArgument, "sampling operator needs at least one index");
  std::vector<bool> seen(static_cast<std::size_t>(std::max<Index>(n, 0)), false);
  for (Index i : indices_) {
    if (i < 0 || i >= n) {
      fail(ErrorCode::OutOfRange, "index " + std::to_string(i) + " outside [0, " + std::to_string(n) + ")");
    }
    if (seen[static_cast<std::size_t>(i)]) {
      fail(ErrorCode::DuplicateIndex, "index " + std::to_string(i) + " selected twice");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
}

Vector SamplingOperator::apply(const Vector& x) const {
  if (x.size() != n_) {
    fail(ErrorCode::DimensionMismatch, "signal length " + std::to_string(x.size()) +
                                           " does not match " + std::to_string(n_));
  }
  Vector out(size());
  for (Index i = 0; i < size(); ++i) out(i) = x(indices_[static_cast<std::size_t>(i)]);
  return out;
}

Matrix SamplingOperator::select_rows(const Matrix& m) const {
  if (m.rows() != n_) {
    fail(ErrorCode::DimensionMismatch, "matrix has " + std::to_string(m.rows()) + " rows, expected " +
                                           std::to_string(n_));
  }
  Matrix out(size(), m.cols());
  for (Index i = 0; i < size(); ++i) out.row(i) = m.row(indices_[static_cast<std::size_t>(i)]);
  return out;
}

RealMatrix SamplingOperator::matrix() const {
  RealMatrix out = RealMatrix::Zero(size(), n_);
  for (Index i = 0; i < size(); ++i) out(i, indices_[static_cast<std::size_t>(i)]) = 1.0;
  return out;
}

SamplingOperator make_sampling_operator(std::vector<Index> indices, Index n) {
  return SamplingOperator(std::move(indices), n);
}

Vector apply_sampling(const SamplingOperator& psi, const GraphSignal& x) { return psi.apply(x.values); }

bool is_qualified(const SamplingOperator& psi, const SpectralDecomposition& decomp, Index k) {
  const Matrix sampled = sampled_band(psi, decomp, k);
  if (sampled.rows() < k) return false;
  return sampled_rank(sampled, decomp, k) == k;
}

Interpolator build_interpolator(const SamplingOperator& psi, const SpectralDecomposition& decomp,
                                Index k) {
  const Matrix sampled = sampled_band(psi, decomp, k);
  require_qualified(sampled, decomp, k);

  Interpolator out;
  out.k = k;
  out.condition = linalg::condition_number(sampled);
  out.ill_conditioned = !(out.condition <= kIllConditioned);
  if (sampled.rows() == k) {
    out.u = sampled.partialPivLu().inverse();
  } else {
    out.u = linalg::pseudo_inverse(sampled);
  }
  out.phi = decomp.v.leftCols(k) * out.u;
  return out;
}

GraphSignal interpolate(const Interpolator& interp, const Vector& x_m) {
  if (x_m.size() != interp.phi.cols()) {
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(interp.phi.cols()) +
                                           " samples, got " + std::to_string(x_m.size()));
  }
  return {interp.phi * x_m};
}

SampledGraph sampled_graph_shift(const SamplingOperator& psi, const SpectralDecomposition& decomp,
                                 Index k) {
  const Matrix sampled = sampled_band(psi, decomp, k);
  if (psi.size() != k) {
    fail(ErrorCode::SampleCountMismatch, "sampled graph needs exactly K=" + std::to_string(k) +
                                             " samples, got " + std::to_string(psi.size()));
  }
  require_qualified(sampled, decomp, k);

  SampledGraph out;
  out.u_inv = sampled;
  out.u = sampled.partialPivLu().inverse();
  out.lambda_k = decomp.eigenvalues.head(k);
  out.shift = out.u_inv * out.lambda_k.asDiagonal() * out.u;
  return out;
}

double band_tail_ratio(const SpectralDecomposition& decomp, const GraphSignal& x, Index k) {
  require_band(decomp, k);
  const Vector coeffs = gft(decomp, x).coeffs;
  const double total = coeffs.norm();
  if (total == 0.0) return 0.0;
  return coeffs.tail(coeffs.size() - k).norm() / total;
}

bool is_bandlimited(const SpectralDecomposition& decomp, const GraphSignal& x, Index k, double tol) {
  return band_tail_ratio(decomp, x, k) <= tol;
}

PreservationCheck difference_preservation_residual(const SamplingOperator& psi,
                                                   const SpectralDecomposition& decomp, Index k,
                                                   const GraphShift& shift, const GraphSignal& x) {
  if (shift.size() != decomp.size()) {
    fail(ErrorCode::DimensionMismatch, "shift and decomposition sizes differ");
  }
  PreservationCheck out;
  out.bandlimited = is_bandlimited(decomp, x, k);

  const SampledGraph sampled = sampled_graph_shift(psi, decomp, k);
  const Vector x_m = psi.apply(x.values);
  const Vector on_sampled = x_m - sampled.shift * x_m;
  const Vector on_original = psi.apply(first_order_difference(shift, x).values);
  out.residual = (on_sampled - on_original).norm();
  return out;
}

}  // namespace gsp
