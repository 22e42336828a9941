#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include "gsp/experiments.hpp"
#include "gsp/sampler_design.hpp"
#include "gsp/ssl.hpp"
#include "support.hpp"

using namespace gsp;
using testing_support::code_of;

namespace {

FeatureSet two_blobs(Seed seed, double separation = 2.0, Index per_cluster = 100) {
  RealMatrix centers(2, 2);
  centers << -separation, 0.0, separation, 0.0;
  return make_gaussian_blobs(centers, per_cluster, 1.0, seed);
}

RealMatrix label_column(const std::vector<int>& classes, const std::vector<Index>& at) {
  RealMatrix out(static_cast<Index>(at.size()), 1);
  for (std::size_t i = 0; i < at.size(); ++i) out(static_cast<Index>(i), 0) = classes[static_cast<std::size_t>(at[i])] == 1 ? 1.0 : -1.0;
  return out;
}

}  // namespace

TEST(Labels, BinaryAndMulticlassRoundTrip) {
  const std::vector<int> bin{0, 1, 1, 0};
  const LabelMatrix b = labels_from_classes(bin, 2);
  EXPECT_EQ(b.entries.cols(), 1);
  EXPECT_EQ(b.classes(), 2);
  EXPECT_EQ(b.entries(0, 0), -1);
  EXPECT_EQ(b.entries(1, 0), 1);
  EXPECT_EQ(classes_from_labels(b), bin);
  const std::vector<int> multi{2, 0, 1, 2};
  const LabelMatrix m = labels_from_classes(multi, 3);
  EXPECT_EQ(m.entries.cols(), 3);
  EXPECT_EQ(m.entries.rowwise().sum(), Eigen::VectorXi::Constant(4, -1));
  EXPECT_EQ(classes_from_labels(m), multi);
  EXPECT_EQ(code_of([&] { labels_from_classes(multi, 2); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([&] { labels_from_classes(multi, 1); }), ErrorCode::InvalidArgument);
}

TEST(KnnGraph, RowStochasticWithKNeighbors) {
  const FeatureSet f = two_blobs(3);
  const GraphShift g = knn_graph(f, 12);
  const RealMatrix a = g.weights().real();
  EXPECT_LT((a.rowwise().sum() - RealVector::Ones(200)).cwiseAbs().maxCoeff(), 1e-12);
  for (Index i = 0; i < 200; ++i) {
    EXPECT_EQ((a.row(i).array() > 0.0).count(), 12);
    EXPECT_EQ(a(i, i), 0.0);
  }
  EXPECT_LE(spectral_radius(g.weights()), 1.0 + 1e-9);
  EXPECT_EQ(g.weights().imag().cwiseAbs().maxCoeff(), 0.0);
}

TEST(KnnGraph, MatchesDirectFormula) {
  RealMatrix pts(4, 1);
  pts << 0.0, 1.0, 3.0, 7.0;
  const GraphShift g = knn_graph({pts, std::nullopt}, 2);
  double total = 0.0;
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) total += std::abs(pts(i, 0) - pts(j, 0));
  }
  const auto p = [&](Index i, Index j) { return std::exp(-16.0 * std::abs(pts(i, 0) - pts(j, 0)) / total); };
  // Vertex 0 keeps 1 and 2; vertex 3 keeps 2 and 1.
  EXPECT_NEAR(g.weights()(0, 1).real(), p(0, 1) / (p(0, 1) + p(0, 2)), 1e-14);
  EXPECT_NEAR(g.weights()(0, 2).real(), p(0, 2) / (p(0, 1) + p(0, 2)), 1e-14);
  EXPECT_EQ(g.weights()(0, 3), Complex{});
  EXPECT_NEAR(g.weights()(3, 2).real(), p(3, 2) / (p(3, 2) + p(3, 1)), 1e-14);
  EXPECT_EQ(g.weights()(3, 0), Complex{});
}

TEST(KnnGraph, TwoPointsSwap) {
  RealMatrix pts(2, 3);
  pts << 0, 0, 0, 1, 2, 3;
  const GraphShift g = knn_graph({pts, std::nullopt}, 1);
  EXPECT_EQ(g.weights().real(), (RealMatrix(2, 2) << 0, 1, 1, 0).finished());
}

TEST(KnnGraph, SeparatedClustersBarelyInteract) {
  RealMatrix pts(10, 2);
  for (Index i = 0; i < 5; ++i) {
    pts.row(i) << 0.01 * double(i), 0.02 * double(i % 2);
    pts.row(5 + i) << 50.0 + 0.01 * double(i), 0.03 * double(i % 3);
  }
  const RealMatrix a = knn_graph({pts, std::nullopt}, 3).weights().real();
  double cross = 0.0;
  double in = 1.0;
  for (Index i = 0; i < 10; ++i) {
    for (Index j = 0; j < 10; ++j) {
      if ((i < 5) != (j < 5)) cross = std::max(cross, a(i, j));
      else if (a(i, j) > 0.0) in = std::min(in, a(i, j));
    }
  }
  EXPECT_LT(cross, 1e-3 * in);
}

TEST(KnnGraph, InvariantToFeatureScaling) {
  const FeatureSet f = two_blobs(5, 2.0, 20);
  FeatureSet scaled = f;
  scaled.features *= 37.0;
  EXPECT_LT((knn_graph(f, 5).weights() - knn_graph(scaled, 5).weights()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KnnGraph, JordanBlockAtZeroIsDefective) {
  // Two vertices nobody picks as a neighbor; eigenvalue 0 has multiplicity 3
  // but only two eigenvectors.
  RealMatrix centers(2, 2);
  centers << -2.0, 0.0, 2.0, 0.0;
  const FeatureSet f = make_gaussian_blobs(centers, 100, 1.0, derive_seed(10, 0));
  const GraphShift g = knn_graph(f, 12);
  EXPECT_EQ((g.weights().colwise().norm().array() == 0.0).count(), 2);
  EXPECT_EQ(code_of([&] { spectral_decompose(g, OrderingPolicy::DescendingReal); }), ErrorCode::Defective);
}

TEST(KnnGraph, Errors) {
  const RealMatrix same = RealMatrix::Ones(5, 2);
  EXPECT_EQ(code_of([&] { knn_graph({same, std::nullopt}, 2); }), ErrorCode::DegenerateFeatures);
  const FeatureSet f = two_blobs(1, 2.0, 3);
  EXPECT_EQ(code_of([&] { knn_graph(f, 6); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { knn_graph(f, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { knn_graph({RealMatrix::Zero(1, 2), std::nullopt}, 1); }), ErrorCode::InvalidArgument);
}

TEST(RealBandBasis, ConjugatePairSpansSameSubspace) {
  const SpectralDecomposition d = cyclic_decomposition(6);
  // Slots 1 and 5 are a conjugate pair; reorder so they are adjacent.
  const std::vector<Index> perm{0, 1, 5, 2, 4, 3};
  const SpectralDecomposition r = reorder_spectrum(d, perm);
  bool flag = false;
  const RealMatrix basis = real_band_basis(r, 3, &flag);
  EXPECT_TRUE(flag);
  const Matrix band = r.band_basis(3);
  // Every real basis column lies in the complex span of the band.
  const Matrix proj = band * (band.adjoint() * band).inverse() * band.adjoint();
  EXPECT_LT((proj * basis.cast<Complex>() - basis.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(Eigen::FullPivLU<RealMatrix>(basis).rank(), 3);
  bool real_flag = true;
  real_band_basis(spectral_decompose(gen_erdos_renyi(10, 0.5, 1)), 4, &real_flag);
  EXPECT_FALSE(real_flag);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    RealMatrix design(12, 4);
    for (Index c = 0; c < 4; ++c) design.col(c) = gaussian_vector(12, rng);
    RealVector y(12);
    for (Index i = 0; i < 12; ++i) y(i) = gaussian_vector(1, rng)(0) > 0 ? 1.0 : -1.0;
    const RealVector w = gaussian_vector(4, rng);
    const RealVector g = logistic_gradient(design, y, w);
    const double h = 1e-5;
    for (Index j = 0; j < 4; ++j) {
      RealVector up = w, down = w;
      up(j) += h;
      down(j) -= h;
      const double fd = (logistic_loss(design, y, up) - logistic_loss(design, y, down)) / (2 * h);
      EXPECT_NEAR(g(j), fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Logistic, LossAtZeroAndLargeMargins) {
  const RealMatrix design = RealMatrix::Identity(3, 3);
  const RealVector y = RealVector::Ones(3);
  EXPECT_NEAR(logistic_loss(design, y, RealVector::Zero(3)), 3.0 * std::log(2.0), 1e-15);
  EXPECT_NEAR(logistic_loss(design, y, RealVector::Constant(3, 800.0)), 0.0, 1e-300);
  EXPECT_NEAR(logistic_loss(design, y, RealVector::Constant(3, -800.0)), 2400.0, 1e-9);
  EXPECT_TRUE(std::isfinite(logistic_gradient(design, y, RealVector::Constant(3, -800.0)).norm()));
}

TEST(FitBand, LossTraceNonincreasing) {
  const FeatureSet f = two_blobs(2);
  const SpectralDecomposition d = spectral_decompose(knn_graph(f, 12));
  const SamplingOperator psi = random_sampler(200, 20, 4);
  const RealMatrix y = label_column(*f.labels, psi.indices());
  FitOptions opts;
  opts.require_qualified = false;
  const BandFit fit = fit_band_coefficients(psi, d, 5, y, opts);
  ASSERT_EQ(fit.loss_trace.size(), 1u);
  const auto& trace = fit.loss_trace[0];
  EXPECT_NEAR(trace.front(), 20.0 * std::log(2.0), 1e-12);
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1]);
  EXPECT_TRUE(fit.coeffs.allFinite());
}

TEST(FitBand, RealizableLabelsOnDisconnectedClusters) {
  // Far-apart clusters give a disconnected kNN graph; the two leading
  // eigenvectors span the cluster indicators, so the labels are bandlimited.
  const FeatureSet f = two_blobs(8, 100.0, 20);
  const SpectralDecomposition d = spectral_decompose(knn_graph(f, 5));
  EXPECT_NEAR(d.eigenvalues(1).real(), 1.0, 1e-9);
  const DesignResult design = greedy_optimal_sampler(d, 2, 2);
  const SamplingOperator psi = design.op(40);
  const RealMatrix y = label_column(*f.labels, design.indices);
  const BandFit fit = fit_band_coefficients(psi, d, 2, y);
  EXPECT_EQ(classes_from_labels(predict_labels(d, fit)), *f.labels);
  // Same sign pattern as direct interpolation of the sampled labels.
  const Interpolator interp = build_interpolator(psi, d, 2);
  const GraphSignal direct = interpolate(interp, y.col(0).cast<Complex>());
  for (Index i = 0; i < 40; ++i) EXPECT_EQ(direct.values(i).real() > 0, (*f.labels)[static_cast<std::size_t>(i)] == 1);
}

TEST(FitBand, Validation) {
  const SpectralDecomposition d = spectral_decompose(gen_erdos_renyi(10, 0.5, 1));
  const SamplingOperator psi({0, 1, 2}, 10);
  RealMatrix y(3, 1);
  y << 1, -1, 1;
  RealMatrix bad = y;
  bad(1, 0) = 0.5;
  EXPECT_EQ(code_of([&] { fit_band_coefficients(psi, d, 3, bad); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { fit_band_coefficients(psi, d, 3, RealMatrix::Ones(2, 1)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { fit_band_coefficients(psi, d, 4, y); }), ErrorCode::NotQualified);
  EXPECT_EQ(code_of([&] { fit_band_coefficients(SamplingOperator({0}, 5), d, 1, RealMatrix::Ones(1, 1)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Predict, ZeroCoefficientsUseTieRules) {
  const SpectralDecomposition d = spectral_decompose(gen_erdos_renyi(8, 0.5, 2));
  BandFit bin;
  bin.k = 3;
  bin.coeffs = RealMatrix::Zero(3, 1);
  EXPECT_EQ(predict_labels(d, bin).entries, Eigen::MatrixXi::Ones(8, 1));
  BandFit multi;
  multi.k = 3;
  multi.coeffs = RealMatrix::Zero(3, 4);
  EXPECT_EQ(classes_from_labels(predict_labels(d, multi)), std::vector<int>(8, 0));
  BandFit wrong;
  wrong.k = 3;
  wrong.coeffs = RealMatrix::Zero(2, 1);
  EXPECT_EQ(code_of([&] { predict_labels(d, wrong); }), ErrorCode::DimensionMismatch);
}

TEST(Predict, InvariantToPositiveScaling) {
  const SpectralDecomposition d = spectral_decompose(knn_graph(two_blobs(4, 2.0, 30), 6));
  Rng rng(3);
  BandFit fit;
  fit.k = 4;
  fit.coeffs = RealMatrix(4, 3);
  for (Index c = 0; c < 3; ++c) fit.coeffs.col(c) = gaussian_vector(4, rng);
  const LabelMatrix base = predict_labels(d, fit);
  BandFit scaled = fit;
  scaled.coeffs *= 13.5;
  EXPECT_EQ(predict_labels(d, scaled).entries, base.entries);
}

TEST(Classification, TwoBlobsWithTwoQueries) {
  double total = 0.0;
  for (Seed s = 0; s < 5; ++s) {
    const FeatureSet f = two_blobs(derive_seed(100, s));
    const ClassificationResult r = active_classification_pipeline(f, 12, 2, 2, QueryPolicy::Greedy, s);
    EXPECT_EQ(r.indices.size(), 2u);
    total += r.accuracy;
  }
  EXPECT_GE(total / 5.0, 0.95);
}

TEST(Classification, FullSupervisionIsExact) {
  const FeatureSet f = two_blobs(6, 2.0, 10);
  const ClassificationResult r = active_classification_pipeline(f, 4, 0, 20, QueryPolicy::Greedy, 0);
  EXPECT_TRUE(r.qualified);
  EXPECT_EQ(r.accuracy, 1.0);
}

TEST(Classification, ThreeBlobsMulticlass) {
  RealMatrix centers(3, 2);
  centers << -3.0, 0.0, 3.0, 0.0, 0.0, 5.0;
  double total = 0.0;
  for (Seed s = 0; s < 20; ++s) {
    const FeatureSet f = make_gaussian_blobs(centers, 50, 1.0, derive_seed(300, s));
    const ClassificationResult r = active_classification_pipeline(f, 12, 0, 10, QueryPolicy::Greedy, s);
    EXPECT_EQ(r.predicted.entries.cols(), 3);
    total += r.accuracy;
  }
  EXPECT_GE(total / 20.0, 0.9);
}

TEST(Classification, RandomPolicyIsSeeded) {
  const FeatureSet f = two_blobs(7, 2.0, 30);
  const auto a = active_classification_pipeline(f, 8, 3, 6, QueryPolicy::Random, 5);
  const auto b = active_classification_pipeline(f, 8, 3, 6, QueryPolicy::Random, 5);
  EXPECT_EQ(a.indices, b.indices);
  EXPECT_EQ(a.accuracy, b.accuracy);
  FeatureSet unlabeled = f;
  unlabeled.labels.reset();
  EXPECT_EQ(code_of([&] { active_classification_pipeline(unlabeled, 8, 3, 6, QueryPolicy::Random, 5); }),
            ErrorCode::InvalidArgument);
}
