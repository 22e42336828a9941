#include "gsp/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gsp/error.hpp"
#include "gsp/linalg.hpp"
#include "gsp/random.hpp"
#include "gsp/sampler_design.hpp"

namespace gsp {

namespace {

constexpr double kComplexMass = 1e-6;
constexpr double kConjugateTol = 1e-8;
constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 80;

// log(1 + exp(t)) without overflow.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

struct ColumnFit {
  RealVector w;
  std::vector<double> trace;
  bool converged = false;
};

ColumnFit descend(const RealMatrix& design, const RealVector& y, const FitOptions& opts) {
  ColumnFit out;
  out.w = RealVector::Zero(design.cols());
  double loss = logistic_loss(design, y, out.w);
  out.trace.push_back(loss);
  double step = 1.0;
  for (Index iter = 0; iter < opts.max_iterations; ++iter) {
    const RealVector g = logistic_gradient(design, y, out.w);
    const double gg = g.squaredNorm();
    if (std::sqrt(gg) <= opts.gradient_tolerance) {
      out.converged = true;
      return out;
    }
    // Let the step grow again after each accepted move; on separable labels
    // the loss flattens and a fixed step would crawl.
    step *= 2.0;
    RealVector trial;
    double trial_loss = 0.0;
    int halvings = 0;
    for (; halvings < kMaxHalvings; ++halvings) {
      trial = out.w - step * g;
      trial_loss = logistic_loss(design, y, trial);
      if (trial_loss <= loss - kArmijo * step * gg) break;
      step *= 0.5;
    }
    if (halvings == kMaxHalvings) return out;  // no descent available at machine precision
    out.w = std::move(trial);
    loss = trial_loss;
    out.trace.push_back(loss);
  }
  out.converged = logistic_gradient(design, y, out.w).norm() <= opts.gradient_tolerance;
  return out;
}

}  // namespace

LabelMatrix labels_from_classes(std::span<const int> classes, int num_classes) {
  if (num_classes < 2) fail(ErrorCode::InvalidArgument, "need at least two classes");
  const Index n = static_cast<Index>(classes.size());
  const Index cols = num_classes == 2 ? 1 : num_classes;
  LabelMatrix out{Eigen::MatrixXi::Constant(n, cols, -1)};
  for (Index i = 0; i < n; ++i) {
    const int c = classes[static_cast<std::size_t>(i)];
    if (c < 0 || c >= num_classes) {
      fail(ErrorCode::OutOfRange, "class " + std::to_string(c) + " outside [0, " +
                                      std::to_string(num_classes) + ")");
    }
    if (cols == 1) {
      out.entries(i, 0) = c == 1 ? 1 : -1;
    } else {
      out.entries(i, c) = 1;
    }
  }
  return out;
}

std::vector<int> classes_from_labels(const LabelMatrix& labels) {
  std::vector<int> out(static_cast<std::size_t>(labels.rows()), 0);
  for (Index i = 0; i < labels.rows(); ++i) {
    if (labels.entries.cols() == 1) {
      out[static_cast<std::size_t>(i)] = labels.entries(i, 0) > 0 ? 1 : 0;
      continue;
    }
    for (Index c = 0; c < labels.entries.cols(); ++c) {
      if (labels.entries(i, c) > 0) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(c);
        break;
      }
    }
  }
  return out;
}

GraphShift knn_graph(const FeatureSet& features, Index k_neighbors) {
  const Index n = features.size();
  if (n < 2) fail(ErrorCode::InvalidArgument, "need at least two feature vectors");
  if (k_neighbors < 1 || k_neighbors >= n) {
    fail(ErrorCode::InvalidArgument, "neighbor count must lie in [1, N-1]");
  }
  const RealMatrix& f = features.features;

  RealMatrix dist = RealMatrix::Zero(n, n);
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = (f.row(i) - f.row(j)).norm();
      dist(i, j) = dist(j, i) = d;
      total += 2.0 * d;
    }
  }
  if (!(total > 0.0)) fail(ErrorCode::DegenerateFeatures, "all feature vectors coincide");
  const double rate = static_cast<double>(n) * static_cast<double>(n) / total;

  RealMatrix a = RealMatrix::Zero(n, n);
  std::vector<Index> order(static_cast<std::size_t>(n - 1));
  for (Index i = 0; i < n; ++i) {
    order.clear();
    for (Index j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + k_neighbors, order.end(), [&](Index x, Index y) {
      return dist(i, x) < dist(i, y) || (dist(i, x) == dist(i, y) && x < y);
    });
    const double nearest = dist(i, order.front());
    double row_sum = 0.0;
    for (Index r = 0; r < k_neighbors; ++r) {
      const Index j = order[static_cast<std::size_t>(r)];
      a(i, j) = std::exp(-rate * (dist(i, j) - nearest));
      row_sum += a(i, j);
    }
    a.row(i) /= row_sum;
  }
  // Row-stochastic with nonnegative entries: the spectral radius is already 1.
  return build_shift(a, false);
}

RealMatrix real_band_basis(const SpectralDecomposition& decomp, Index k, bool* complex_flag) {
  if (k < 1 || k > decomp.size()) fail(ErrorCode::BandExceedsN, "bandwidth outside [1, N]");
  const Index n = decomp.size();
  RealMatrix out(n, k);
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  bool flagged = false;
  for (Index j = 0; j < k; ++j) {
    if (used[static_cast<std::size_t>(j)]) continue;
    const auto col = decomp.v.col(j);
    const double mass = col.imag().norm() / std::max(col.norm(), 1e-300);
    if (mass <= kComplexMass) {
      out.col(j) = col.real();
      used[static_cast<std::size_t>(j)] = true;
      continue;
    }
    flagged = true;
    const Complex lambda = decomp.eigenvalues(j);
    const double tol = kConjugateTol * std::max(1.0, std::abs(lambda));
    Index partner = -1;
    for (Index q = j + 1; q < k; ++q) {
      if (!used[static_cast<std::size_t>(q)] && std::abs(decomp.eigenvalues(q) - std::conj(lambda)) <= tol) {
        partner = q;
        break;
      }
    }
    out.col(j) = col.real();
    used[static_cast<std::size_t>(j)] = true;
    if (partner >= 0) {
      out.col(partner) = col.imag();
      used[static_cast<std::size_t>(partner)] = true;
    }
  }
  if (complex_flag) *complex_flag = flagged;
  return out;
}

double logistic_loss(const RealMatrix& design, const RealVector& y, const RealVector& w) {
  const RealVector z = design * w;
  double total = 0.0;
  for (Index i = 0; i < z.size(); ++i) total += softplus(-y(i) * z(i));
  return total;
}

RealVector logistic_gradient(const RealMatrix& design, const RealVector& y, const RealVector& w) {
  const RealVector z = design * w;
  RealVector r(z.size());
  for (Index i = 0; i < z.size(); ++i) r(i) = -y(i) * sigmoid(-y(i) * z(i));
  return design.transpose() * r;
}

BandFit fit_band_coefficients(const SamplingOperator& psi, const SpectralDecomposition& decomp,
                              Index k, const RealMatrix& sampled_labels, const FitOptions& opts) {
  if (psi.ambient_size() != decomp.size()) {
    fail(ErrorCode::DimensionMismatch, "sampling operator and graph sizes differ");
  }
  if (sampled_labels.rows() != psi.size() || sampled_labels.cols() < 1) {
    fail(ErrorCode::DimensionMismatch, "need one label row per sample");
  }
  for (Index i = 0; i < sampled_labels.size(); ++i) {
    const double v = sampled_labels.data()[i];
    if (v != 1.0 && v != -1.0) fail(ErrorCode::InvalidArgument, "labels must be +1 or -1");
  }
  if (opts.require_qualified && !is_qualified(psi, decomp, k)) {
    fail(ErrorCode::NotQualified, "sampling operator is not qualified for the band");
  }

  BandFit out;
  out.k = k;
  const RealMatrix basis = real_band_basis(decomp, k, &out.complex_basis);
  const RealMatrix design = psi.select_rows(basis.cast<Complex>()).real();
  out.coeffs.resize(k, sampled_labels.cols());
  for (Index c = 0; c < sampled_labels.cols(); ++c) {
    ColumnFit col = descend(design, sampled_labels.col(c), opts);
    out.coeffs.col(c) = col.w;
    out.converged = out.converged && col.converged;
    out.loss_trace.push_back(std::move(col.trace));
  }
  return out;
}

LabelMatrix predict_labels(const SpectralDecomposition& decomp, const BandFit& fit) {
  if (fit.coeffs.rows() != fit.k || fit.k < 1 || fit.k > decomp.size()) {
    fail(ErrorCode::DimensionMismatch, "fit does not match the decomposition");
  }
  const RealMatrix scores = real_band_basis(decomp, fit.k) * fit.coeffs;
  const Index n = scores.rows();
  const Index c = scores.cols();
  LabelMatrix out{Eigen::MatrixXi::Constant(n, c, -1)};
  for (Index i = 0; i < n; ++i) {
    if (c == 1) {
      out.entries(i, 0) = scores(i, 0) >= 0.0 ? 1 : -1;
      continue;
    }
    Index best = 0;
    for (Index j = 1; j < c; ++j) {
      if (scores(i, j) > scores(i, best)) best = j;
    }
    out.entries(i, best) = 1;
  }
  return out;
}

ClassificationResult active_classification(const SpectralDecomposition& decomp,
                                           std::span<const int> truth, Index bandwidth,
                                           Index m_samples, QueryPolicy policy, Seed seed) {
  const Index n = decomp.size();
  if (static_cast<Index>(truth.size()) != n) {
    fail(ErrorCode::DimensionMismatch, "need one ground-truth label per vertex");
  }
  const Index k = bandwidth == 0 ? m_samples : bandwidth;
  const int num_classes = std::max(2, *std::max_element(truth.begin(), truth.end()) + 1);
  const LabelMatrix all = labels_from_classes(truth, num_classes);

  const SamplingOperator psi = policy == QueryPolicy::Greedy
                                   ? greedy_optimal_sampler(decomp, k, m_samples).op(n)
                                   : random_sampler(n, m_samples, seed);
  RealMatrix queried(psi.size(), all.entries.cols());
  for (Index i = 0; i < psi.size(); ++i) {
    queried.row(i) = all.entries.row(psi.indices()[static_cast<std::size_t>(i)]).cast<double>();
  }

  FitOptions opts;
  opts.require_qualified = false;
  const BandFit fit = fit_band_coefficients(psi, decomp, k, queried, opts);

  ClassificationResult out;
  out.indices = psi.indices();
  out.qualified = is_qualified(psi, decomp, k);
  out.predicted = predict_labels(decomp, fit);
  const auto predicted = classes_from_labels(out.predicted);
  Index correct = 0;
  for (Index i = 0; i < n; ++i) {
    if (predicted[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(i)]) ++correct;
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return out;
}

ClassificationResult active_classification_pipeline(const FeatureSet& features, Index k_neighbors,
                                                    Index bandwidth, Index m_samples,
                                                    QueryPolicy policy, Seed seed) {
  if (!features.labels) fail(ErrorCode::InvalidArgument, "pipeline needs ground-truth labels to score");
  const GraphShift shift = knn_graph(features, k_neighbors);
  const SpectralDecomposition decomp = spectral_decompose(shift, OrderingPolicy::DescendingReal);
  return active_classification(decomp, *features.labels, bandwidth, m_samples, policy, seed);
}

FeatureSet make_gaussian_blobs(const RealMatrix& centers, Index per_cluster, double spread,
                               Seed seed) {
  if (per_cluster < 1 || centers.rows() < 1) fail(ErrorCode::InvalidArgument, "empty blob specification");
  Rng rng(seed);
  const Index dim = centers.cols();
  FeatureSet out;
  out.features.resize(centers.rows() * per_cluster, dim);
  out.labels.emplace();
  for (Index c = 0; c < centers.rows(); ++c) {
    for (Index i = 0; i < per_cluster; ++i) {
      out.features.row(c * per_cluster + i) = centers.row(c) + gaussian_vector(dim, rng, spread).transpose();
      out.labels->push_back(static_cast<int>(c));
    }
  }
  return out;
}

}  // namespace gsp
