#include "gsp/experiments.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "gsp/error.hpp"
#include "gsp/linalg.hpp"
#include "gsp/random.hpp"
#include "gsp/sampler_design.hpp"

namespace gsp {

namespace {

constexpr double kOrthogonalityTol = 1e-8;
constexpr double kRecoveryTol = 1e-8;

void require_size(Index n, Index min_n) {
  if (n < min_n) fail(ErrorCode::InvalidArgument, "graph size must be at least " + std::to_string(min_n));
}

}  // namespace

GraphShift gen_erdos_renyi(Index n, double p, Seed seed, bool directed, bool normalize) {
  require_size(n, 1);
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::BadP, "edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  RealMatrix a = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      // One draw per pair whatever p is, so graphs from one seed are nested in p.
      const bool edge = coin(rng) < p;
      if (!edge) continue;
      a(i, j) = 1.0;
      if (!directed) a(j, i) = 1.0;
    }
  }
  return build_shift(a, normalize);
}

GraphShift sensor_graph(Index n, double radius, Seed seed, bool normalize) {
  require_size(n, 1);
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  RealMatrix points(n, 2);
  for (Index i = 0; i < n; ++i) {
    points(i, 0) = coord(rng);
    points(i, 1) = coord(rng);
  }
  RealMatrix a = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = (points.row(i) - points.row(j)).norm();
      if (d > 0.0 && d < radius) a(i, j) = a(j, i) = 1.0;
    }
  }
  return build_shift(a, normalize);
}

SuccessPoint success_rate(const ErConfig& cfg) {
  if (!(cfg.p > 0.0 && cfg.p <= 1.0)) fail(ErrorCode::BadP, "edge probability must lie in (0, 1]");
  if (cfg.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (cfg.k < 1 || cfg.k > cfg.n) fail(ErrorCode::BandExceedsN, "bandwidth must lie in [1, n]");

  SuccessPoint out;
  out.p = cfg.p;
  out.trials = cfg.trials;
  for (Index t = 0; t < cfg.trials; ++t) {
    const Seed trial_seed = derive_seed(cfg.seed, static_cast<Seed>(t));
    const GraphShift shift = gen_erdos_renyi(cfg.n, cfg.p, derive_seed(trial_seed, 0));
    SpectralDecomposition decomp;
    try {
      decomp = spectral_decompose(shift);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Defective && e.code() != ErrorCode::NumericalFailure) throw;
      ++out.defective;
      continue;
    }
    const SamplingOperator psi = random_sampler(cfg.n, cfg.k, derive_seed(trial_seed, 1));
    if (is_qualified(psi, decomp, cfg.k)) ++out.successes;
  }
  if (static_cast<double>(out.defective) > 0.1 * static_cast<double>(cfg.trials)) {
    fail(ErrorCode::DecompositionFailuresExceeded,
         std::to_string(out.defective) + " of " + std::to_string(cfg.trials) +
             " graphs could not be decomposed");
  }
  out.rate = static_cast<double>(out.successes) / static_cast<double>(cfg.trials);
  return out;
}

SuccessCurve success_curve(Index n, Index k, std::span<const double> p_grid, Index trials,
                           Seed seed) {
  SuccessCurve curve{n, k, trials, {}};
  for (double p : p_grid) curve.points.push_back(success_rate({n, p, trials, k, seed}));
  return curve;
}

SpectralDecomposition frame_scaled(const SpectralDecomposition& decomp) {
  const Index n = decomp.size();
  const Matrix gram = decomp.v.adjoint() * decomp.v;
  const RealVector diag = gram.diagonal().real();
  Matrix off = gram;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() > kOrthogonalityTol * diag.maxCoeff()) {
    fail(ErrorCode::ScalingUnavailable, "eigenvectors are not orthogonal; V^H V = N I is unreachable");
  }
  Vector scales(n);
  for (Index j = 0; j < n; ++j) scales(j) = std::sqrt(static_cast<double>(n) / diag(j));
  return scale_eigenvectors(decomp, scales);
}

FrameBoundReport frame_bound_check(const SpectralDecomposition& decomp, Index k, Index m,
                                   Index trials, Seed seed) {
  const Index n = decomp.size();
  if (k < 1 || k > n) fail(ErrorCode::BandExceedsN, "bandwidth must lie in [1, n]");
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
  const Matrix gram = decomp.v.adjoint() * decomp.v;
  const double dn = static_cast<double>(n);
  if ((gram - dn * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-6 * dn) {
    fail(ErrorCode::ScalingUnavailable, "eigenvectors are not scaled to V^H V = N I");
  }

  FrameBoundReport out;
  out.m = m;
  out.conjugate_transpose = linalg::imaginary_ratio(decomp.v.leftCols(k)) > 1e-9;
  const Matrix basis = decomp.v.leftCols(k);
  Index within = 0;
  for (Index t = 0; t < trials; ++t) {
    const SamplingOperator psi = random_sampler(n, m, derive_seed(seed, static_cast<Seed>(t)));
    double dev = 0.0;
    if (out.conjugate_transpose) {
      const Matrix b = psi.select_rows(basis);
      const Matrix g = b.adjoint() * b / static_cast<double>(m) - Matrix::Identity(k, k);
      Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
      dev = es.eigenvalues().cwiseAbs().maxCoeff();
    } else {
      const RealMatrix b = psi.select_rows(basis).real();
      const RealMatrix g = b.transpose() * b / static_cast<double>(m) - RealMatrix::Identity(k, k);
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(g, Eigen::EigenvaluesOnly);
      dev = es.eigenvalues().cwiseAbs().maxCoeff();
    }
    out.deviations.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
    if (dev <= 0.5) ++within;
  }
  out.fraction_within_half = static_cast<double>(within) / static_cast<double>(trials);
  out.lower_frame_bound = static_cast<double>(m) * (1.0 - out.max_deviation);
  out.upper_frame_bound = static_cast<double>(m) * (1.0 + out.max_deviation);
  return out;
}

GraphShift cyclic_shift(Index n) {
  require_size(n, 2);
  RealMatrix a = RealMatrix::Zero(n, n);
  a(0, n - 1) = 1.0;
  for (Index i = 1; i < n; ++i) a(i, i - 1) = 1.0;
  return build_shift(a, false);
}

SpectralDecomposition cyclic_decomposition(Index n) {
  require_size(n, 2);
  const double dn = static_cast<double>(n);
  const double norm = 1.0 / std::sqrt(dn);
  SpectralDecomposition out;
  out.v.resize(n, n);
  out.eigenvalues.resize(n);
  for (Index k = 0; k < n; ++k) {
    // Reduce jk mod n before forming the angle to keep large products exact.
    for (Index j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / dn;
      out.v(j, k) = std::polar(norm, angle);
    }
    out.eigenvalues(k) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / dn);
  }
  out.v_inv = out.v.adjoint();
  out.order_tag = "dft";
  return out;
}

std::vector<Index> even_first_permutation(Index n) {
  std::vector<Index> perm;
  perm.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; i += 2) perm.push_back(i);
  for (Index i = 1; i < n; i += 2) perm.push_back(i);
  return perm;
}

bool dft_sampling_check(Index n, Index k, std::span<const Index> indices, Seed seed) {
  if (n < 2 || k < 1 || k > n) return false;
  if (static_cast<Index>(indices.size()) < k) return false;
  try {
    const SpectralDecomposition decomp = cyclic_decomposition(n);
    const SamplingOperator psi(std::vector<Index>(indices.begin(), indices.end()), n);
    if (!is_qualified(psi, decomp, k)) return false;
    const Interpolator interp = build_interpolator(psi, decomp, k);

    Rng rng(seed);
    const Vector coeffs = gaussian_vector(k, rng).cast<Complex>() +
                          Complex{0.0, 1.0} * gaussian_vector(k, rng).cast<Complex>();
    const Vector x = decomp.v.leftCols(k) * coeffs;
    const Vector recovered = interpolate(interp, psi.apply(x)).values;
    return (recovered - x).norm() <= kRecoveryTol * x.norm();
  } catch (const Error&) {
    return false;
  }
}

SampledGraph cyclic_downsample_demo(Index n) {
  if (n < 2 || n % 2 != 0) fail(ErrorCode::OddN, "cyclic downsampling needs an even size >= 2");
  const auto perm = even_first_permutation(n);
  const SpectralDecomposition decomp = reorder_spectrum(cyclic_decomposition(n), perm);
  std::vector<Index> first_half(static_cast<std::size_t>(n / 2));
  for (Index i = 0; i < n / 2; ++i) first_half[static_cast<std::size_t>(i)] = i;
  return sampled_graph_shift(SamplingOperator(std::move(first_half), n), decomp, n / 2);
}

GraphShift five_node_shift() {
  RealMatrix a(5, 5);
  a << 0, 0.4, 0.4, 0, 0.2,
       2.0 / 3.0, 0, 1.0 / 3.0, 0, 0,
       0.5, 0.25, 0, 0.25, 0,
       0, 0, 0.5, 0, 0.5,
       0.5, 0, 0, 0.5, 0;
  return build_shift(a, false);
}

Walkthrough five_node_walkthrough() {
  // Two-decimal basis the coefficients x_hat refer to; only its column
  // orientation is used.
  RealMatrix reference(5, 5);
  reference << 0.45, 0.19, 0.25, 0.35, -0.40,
               0.45, 0.40, 0.16, -0.74, 0.18,
               0.45, 0.08, -0.56, 0.29, 0.36,
               0.45, -0.66, -0.41, -0.47, -0.57,
               0.45, -0.60, 0.66, 0.13, 0.59;

  GraphShift shift = five_node_shift();
  SpectralDecomposition decomp = spectral_decompose(shift);
  Vector signs(5);
  for (Index j = 0; j < 5; ++j) {
    const Complex dot = reference.col(j).cast<Complex>().dot(decomp.v.col(j));
    signs(j) = dot.real() < 0.0 ? -1.0 : 1.0;
  }
  decomp = scale_eigenvectors(decomp, signs);

  const Index k = 3;
  Vector x_hat(5);
  x_hat << 0.5, 0.2, 0.1, 0.0, 0.0;
  const GraphSignal x = igft(decomp, {x_hat});
  std::vector<Index> indices{0, 1, 3};
  const SamplingOperator psi(indices, 5);
  const Vector x_m = psi.apply(x.values);
  Interpolator interp = build_interpolator(psi, decomp, k);
  SampledGraph sampled = sampled_graph_shift(psi, decomp, k);
  const Vector sampled_difference = x_m - sampled.shift * x_m;
  GraphSignal recovered = interpolate(interp, x_m);
  const double smin = sigma_min_of_subset(decomp, k, indices);
  GraphSignal difference = first_order_difference(shift, x);
  return Walkthrough{std::move(shift), std::move(decomp), k, x_hat, x, std::move(difference),
                     std::move(indices), x_m, std::move(interp), std::move(sampled),
                     sampled_difference, std::move(recovered), smin};
}

}  // namespace gsp
