#pragma once

#include <span>
#include <string>
#include <vector>

#include "gsp/types.hpp"

namespace gsp {

/// Weighted adjacency matrix acting as the elementary shift on a graph.
///
/// Directed graphs are allowed, so the matrix need not be symmetric. When
/// built with normalization the largest eigenvalue magnitude is 1.
class GraphShift {
 public:
  GraphShift() = default;

  const Matrix& weights() const noexcept { return weights_; }
  Index size() const noexcept { return weights_.rows(); }
  bool normalized() const noexcept { return normalized_; }

  /// Set when normalization was requested but the spectral radius was zero
  /// (nilpotent or empty graph); the matrix is then left as given.
  bool degenerate() const noexcept { return degenerate_; }

  /// Spectral radius of the raw matrix when normalization ran, 1 otherwise.
  double scale() const noexcept { return scale_; }

  Vector apply(const Vector& x) const;

 private:
  friend GraphShift build_shift(Matrix raw, bool normalize);

  Matrix weights_;
  bool normalized_ = false;
  bool degenerate_ = false;
  double scale_ = 1.0;
};

/// Throws NonSquare or NonFinite on malformed input.
GraphShift build_shift(Matrix raw, bool normalize);
GraphShift build_shift(const RealMatrix& raw, bool normalize);

/// Largest eigenvalue magnitude.
double spectral_radius(const Matrix& a);

struct GraphSignal {
  Vector values;

  Index size() const noexcept { return values.size(); }
  static GraphSignal from_real(const RealVector& v) { return {v.cast<Complex>()}; }
};

struct Spectrum {
  Vector coeffs;

  Index size() const noexcept { return coeffs.size(); }
};

enum class OrderingPolicy {
  /// Descending real part, ties by descending imaginary part, then by solver index.
  DescendingReal,
  AscendingReal,
  /// Whatever order the eigensolver produced.
  SolverOrder,
};

/// A = V diag(eigenvalues) V^-1 with the columns of V as the graph Fourier basis.
struct SpectralDecomposition {
  Matrix v;
  Matrix v_inv;
  Vector eigenvalues;
  std::string order_tag;

  Index size() const noexcept { return v.rows(); }

  /// First k columns of V.
  Matrix band_basis(Index k) const { return v.leftCols(k); }
  Matrix reconstruct() const { return v * eigenvalues.asDiagonal() * v_inv; }
};

/// Eigendecomposition of the shift with columns scaled to unit 2-norm and
/// rotated so their largest-magnitude entry is real and positive.
///
/// Hermitian shifts use a self-adjoint solver and get an orthonormal V. General
/// shifts use a Schur-based solver; clusters of repeated eigenvalues are
/// re-solved as a null space so semisimple multiplicities stay well
/// conditioned. Throws Defective when cond(V) exceeds 1e12.
SpectralDecomposition spectral_decompose(const GraphShift& shift,
                                         OrderingPolicy ordering = OrderingPolicy::DescendingReal);

Spectrum gft(const SpectralDecomposition& decomp, const GraphSignal& x);
GraphSignal igft(const SpectralDecomposition& decomp, const Spectrum& s);

/// New slot i holds old eigenpair perm[i].
SpectralDecomposition reorder_spectrum(const SpectralDecomposition& decomp,
                                       std::span<const Index> perm);

/// V <- V diag(scales), V^-1 <- diag(scales)^-1 V^-1. Scales must be nonzero.
SpectralDecomposition scale_eigenvectors(const SpectralDecomposition& decomp,
                                         const Vector& scales);

/// x - A x.
GraphSignal first_order_difference(const GraphShift& shift, const GraphSignal& x);

/// ||x - A x||_p^p, p >= 1.
double total_variation(const GraphShift& shift, const GraphSignal& x, double p);

/// ||V Lambda V^-1 - A||_F / ||A||_F.
double reconstruction_error(const SpectralDecomposition& decomp, const GraphShift& shift);

/// Checks that every imaginary part is within tol of zero relative to the
/// largest magnitude, then drops them. Throws NumericalFailure otherwise.
RealVector real_part_checked(const Vector& v, double tol = 1e-9);

}  // namespace gsp
