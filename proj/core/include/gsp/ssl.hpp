#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gsp/sampling.hpp"

namespace gsp {

/// N feature vectors as rows, with optional integer class labels.
struct FeatureSet {
  RealMatrix features;
  std::optional<std::vector<int>> labels;

  Index size() const noexcept { return features.rows(); }
};

/// +-1 label matrix. Binary problems use a single column (+1 = class 1);
/// C > 2 classes use one column per class with a single +1 per row.
struct LabelMatrix {
  Eigen::MatrixXi entries;

  Index rows() const noexcept { return entries.rows(); }
  Index classes() const noexcept { return entries.cols() == 1 ? 2 : entries.cols(); }
};

LabelMatrix labels_from_classes(std::span<const int> classes, int num_classes);
std::vector<int> classes_from_labels(const LabelMatrix& labels);

/// Directed k-nearest-neighbor similarity graph.
///
/// P_ij = exp(-N^2 ||f_i - f_j|| / sum_ab ||f_a - f_b||) for the k nearest j
/// of i (Euclidean, ties to the lower index), zero elsewhere, and each row of
/// P is scaled to sum to 1. The exponent is offset by the row's nearest
/// distance before exponentiation; the offset cancels in the row scaling and
/// keeps far-away rows from underflowing. Throws DegenerateFeatures when all
/// points coincide.
GraphShift knn_graph(const FeatureSet& features, Index k_neighbors);

/// Real basis for the first k spectral slots. Real eigenvectors keep their
/// real part; a complex eigenvector whose conjugate partner is also in the
/// band contributes (Re v, Im v), which spans the same real subspace; an
/// unpaired complex column contributes Re v. `complex_flag` reports whether
/// any column carried imaginary mass above 1e-6.
RealMatrix real_band_basis(const SpectralDecomposition& decomp, Index k,
                           bool* complex_flag = nullptr);

/// sum_i log(1 + exp(-y_i (B w)_i)).
double logistic_loss(const RealMatrix& design, const RealVector& y, const RealVector& w);
RealVector logistic_gradient(const RealMatrix& design, const RealVector& y, const RealVector& w);

struct FitOptions {
  double gradient_tolerance = 1e-6;
  Index max_iterations = 10000;
  /// Reject operators with rank(Psi V_(K)) < K. Disabled when comparing
  /// against random sampling, which need not be qualified.
  bool require_qualified = true;
};

struct BandFit {
  RealMatrix coeffs;  // K x C
  Index k = 0;
  std::vector<std::vector<double>> loss_trace;  // per class, one entry per accepted step
  bool converged = true;     // every class reached the gradient tolerance
  bool complex_basis = false;
};

/// Logistic relaxation of the sign-matching band fit: per label column,
/// gradient descent with backtracking from w = 0. Non-convergence within the
/// iteration budget is reported through `converged` and the last (best)
/// iterate is returned.
BandFit fit_band_coefficients(const SamplingOperator& psi, const SpectralDecomposition& decomp,
                              Index k, const RealMatrix& sampled_labels, const FitOptions& opts = {});

/// Binary: sgn(V_(K) coeffs) with sgn(0) = +1. Multiclass: row argmax,
/// ties to the lowest class.
LabelMatrix predict_labels(const SpectralDecomposition& decomp, const BandFit& fit);

enum class QueryPolicy { Greedy, Random };

struct ClassificationResult {
  double accuracy = 0.0;
  std::vector<Index> indices;
  bool qualified = false;
  LabelMatrix predicted;
};

/// Designs the query set on `decomp` (descending frequency order expected),
/// reads labels at the chosen vertices, fits and scores against `truth`.
/// bandwidth = 0 means bandwidth = m_samples.
ClassificationResult active_classification(const SpectralDecomposition& decomp,
                                           std::span<const int> truth, Index bandwidth,
                                           Index m_samples, QueryPolicy policy, Seed seed);

/// knn_graph, descending-real decomposition, then active_classification.
ClassificationResult active_classification_pipeline(const FeatureSet& features, Index k_neighbors,
                                                    Index bandwidth, Index m_samples,
                                                    QueryPolicy policy, Seed seed);

/// `per_cluster` isotropic Gaussian points around each row of `centers`.
FeatureSet make_gaussian_blobs(const RealMatrix& centers, Index per_cluster, double spread,
                               Seed seed);

}  // namespace gsp
