#include "gsp/graph_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "gsp/error.hpp"
#include "gsp/linalg.hpp"

namespace gsp {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kDefectiveCondition = 1e12;
constexpr double kReconstructionTol = 1e-8;
constexpr double kClusterTol = 1e-8;
constexpr double kOrderingTieTol = 1e-10;

void require_dimension(Index expected, Index actual, const char* what) {
  if (expected != actual) {
    fail(ErrorCode::DimensionMismatch, std::string(what) + ": expected length " +
                                           std::to_string(expected) + ", got " +
                                           std::to_string(actual));
  }
}

bool is_real(const Matrix& a) { return a.imag().cwiseAbs().maxCoeff() == 0.0; }

// Unit 2-norm, largest-magnitude entry (first one on exact ties) real positive.
void normalize_columns(Matrix& v) {
  for (Index j = 0; j < v.cols(); ++j) {
    auto col = v.col(j);
    const double norm = col.norm();
    if (norm == 0.0) continue;
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    const Complex phase = std::conj(col(pivot)) / best;
    col *= phase / norm;
  }
}

// Groups indices whose keys lie within a chain of tol-sized gaps, in key order.
std::vector<std::vector<Index>> tie_groups(const std::vector<Index>& sorted,
                                           const std::vector<double>& key, double tol) {
  std::vector<std::vector<Index>> groups;
  for (Index idx : sorted) {
    if (!groups.empty() && std::abs(key[groups.back().back()] - key[idx]) <= tol) {
      groups.back().push_back(idx);
    } else {
      groups.push_back({idx});
    }
  }
  return groups;
}

std::vector<Index> ordering_permutation(const Vector& lambda, OrderingPolicy ordering) {
  const Index n = lambda.size();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  if (ordering == OrderingPolicy::SolverOrder) return perm;

  const double sign = ordering == OrderingPolicy::DescendingReal ? -1.0 : 1.0;
  const double scale = std::max(1.0, n > 0 ? lambda.cwiseAbs().maxCoeff() : 0.0);
  const double tol = kOrderingTieTol * scale;

  std::vector<double> re(static_cast<std::size_t>(n));
  std::vector<double> im(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    re[static_cast<std::size_t>(i)] = sign * lambda(i).real();
    im[static_cast<std::size_t>(i)] = sign * lambda(i).imag();
  }
  std::stable_sort(perm.begin(), perm.end(), [&](Index a, Index b) { return re[a] < re[b]; });

  std::vector<Index> out;
  out.reserve(perm.size());
  for (auto& group : tie_groups(perm, re, tol)) {
    std::stable_sort(group.begin(), group.end(), [&](Index a, Index b) { return a < b; });
    std::stable_sort(group.begin(), group.end(), [&](Index a, Index b) { return im[a] < im[b]; });
    for (auto& sub : tie_groups(group, im, tol)) {
      std::sort(sub.begin(), sub.end());
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Replaces Schur back-substitution eigenvectors of repeated eigenvalues with
// an orthonormal null-space basis of (A - mu I). A cluster whose null space is
// thinner than its multiplicity is a Jordan block.
void repair_clusters(const Matrix& a, Vector& lambda, Matrix& v) {
  const Index n = lambda.size();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  const double tol = kClusterTol * scale;

  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(lambda(i) - lambda(j)) <= tol) parent[find(j)] = find(i);
    }
  }
  std::vector<std::vector<Index>> clusters(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) clusters[find(i)].push_back(i);

  const double anorm = std::max(1.0, a.norm());
  for (const auto& members : clusters) {
    const Index m = static_cast<Index>(members.size());
    if (m < 2) continue;
    Complex mu{0.0, 0.0};
    for (Index i : members) mu += lambda(i);
    mu /= static_cast<double>(m);

    const Matrix shifted = a - mu * Matrix::Identity(n, n);
    Eigen::BDCSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    Index nullity = 0;
    while (nullity < m && sigma(n - 1 - nullity) <= 1e-9 * anorm) ++nullity;
    if (nullity < m) {
      fail(ErrorCode::Defective, "eigenvalue of modulus " + scientific(std::abs(mu)) + " repeats " +
                                     std::to_string(m) + " times with " + std::to_string(nullity) +
                                     " independent eigenvectors; shift is not diagonalizable");
    }
    const Matrix basis = svd.matrixV().rightCols(m);
    for (Index c = 0; c < m; ++c) {
      v.col(members[c]) = basis.col(c);
      lambda(members[c]) = mu;
    }
  }
}

}  // namespace

Vector GraphShift::apply(const Vector& x) const {
  require_dimension(size(), x.size(), "shift apply");
  return weights_ * x;
}

double spectral_radius(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (linalg::is_hermitian(a, kHermitianTol)) {
    if (is_real(a)) {
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(a.real(), Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::ComplexEigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "eigenvalue iteration did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

GraphShift build_shift(Matrix raw, bool normalize) {
  if (raw.rows() != raw.cols() || raw.rows() < 1) {
    fail(ErrorCode::NonSquare, "shift must be a non-empty square matrix, got " +
                                   std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()));
  }
  if (!linalg::all_finite(raw)) fail(ErrorCode::NonFinite, "shift contains NaN or Inf");

  GraphShift shift;
  if (normalize) {
    const double radius = spectral_radius(raw);
    if (radius == 0.0) {
      shift.degenerate_ = true;
    } else {
      raw /= radius;
      shift.scale_ = radius;
      shift.normalized_ = true;
    }
  }
  shift.weights_ = std::move(raw);
  return shift;
}

GraphShift build_shift(const RealMatrix& raw, bool normalize) {
  return build_shift(Matrix(raw.cast<Complex>()), normalize);
}

SpectralDecomposition spectral_decompose(const GraphShift& shift, OrderingPolicy ordering) {
  const Matrix& a = shift.weights();
  const Index n = a.rows();
  if (n < 1) fail(ErrorCode::NonSquare, "empty shift");
  if (!linalg::all_finite(a)) fail(ErrorCode::NonFinite, "shift contains NaN or Inf");

  const bool hermitian = linalg::is_hermitian(a, kHermitianTol);
  Matrix v;
  Vector lambda;
  if (hermitian) {
    if (is_real(a)) {
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(a.real());
      if (es.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "symmetric eigensolver failed");
      v = es.eigenvectors().cast<Complex>();
      lambda = es.eigenvalues().cast<Complex>();
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(a);
      if (es.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "hermitian eigensolver failed");
      v = es.eigenvectors();
      lambda = es.eigenvalues().cast<Complex>();
    }
  } else {
    Eigen::ComplexEigenSolver<Matrix> es(a, true);
    if (es.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "eigensolver did not converge");
    v = es.eigenvectors();
    lambda = es.eigenvalues();
    repair_clusters(a, lambda, v);
  }

  const auto perm = ordering_permutation(lambda, ordering);
  SpectralDecomposition out;
  out.v.resize(n, n);
  out.eigenvalues.resize(n);
  for (Index i = 0; i < n; ++i) {
    out.v.col(i) = v.col(perm[static_cast<std::size_t>(i)]);
    out.eigenvalues(i) = lambda(perm[static_cast<std::size_t>(i)]);
  }
  normalize_columns(out.v);

  if (hermitian) {
    out.v_inv = out.v.adjoint();
  } else {
    const double cond = linalg::condition_number(out.v);
    if (!(cond <= kDefectiveCondition)) {
      fail(ErrorCode::Defective, "eigenvector matrix condition number " + scientific(cond) +
                                     " exceeds 1e12; shift is not diagonalizable");
    }
    out.v_inv = out.v.partialPivLu().inverse();
  }

  switch (ordering) {
    case OrderingPolicy::DescendingReal: out.order_tag = "descending-real"; break;
    case OrderingPolicy::AscendingReal: out.order_tag = "ascending-real"; break;
    case OrderingPolicy::SolverOrder: out.order_tag = "solver"; break;
  }

  const double err = reconstruction_error(out, shift);
  if (!(err <= kReconstructionTol)) {
    fail(ErrorCode::NumericalFailure, "V Lambda V^-1 reconstruction error " + scientific(err) + " exceeds 1e-8");
  }
  return out;
}

Spectrum gft(const SpectralDecomposition& decomp, const GraphSignal& x) {
  require_dimension(decomp.size(), x.size(), "gft");
  return {decomp.v_inv * x.values};
}

GraphSignal igft(const SpectralDecomposition& decomp, const Spectrum& s) {
  require_dimension(decomp.size(), s.size(), "igft");
  return {decomp.v * s.coeffs};
}

SpectralDecomposition reorder_spectrum(const SpectralDecomposition& decomp,
                                       std::span<const Index> perm) {
  const Index n = decomp.size();
  if (static_cast<Index>(perm.size()) != n) {
    fail(ErrorCode::InvalidPermutation, "permutation length " + std::to_string(perm.size()) +
                                            " does not match " + std::to_string(n));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
      fail(ErrorCode::InvalidPermutation, "entry " + std::to_string(p) + " repeated or out of range");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }

  SpectralDecomposition out;
  out.v.resize(n, n);
  out.v_inv.resize(n, n);
  out.eigenvalues.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Index src = perm[static_cast<std::size_t>(i)];
    out.v.col(i) = decomp.v.col(src);
    out.v_inv.row(i) = decomp.v_inv.row(src);
    out.eigenvalues(i) = decomp.eigenvalues(src);
  }
  out.order_tag = decomp.order_tag + "+permuted";
  return out;
}

SpectralDecomposition scale_eigenvectors(const SpectralDecomposition& decomp,
                                         const Vector& scales) {
  require_dimension(decomp.size(), scales.size(), "eigenvector scales");
  for (Index i = 0; i < scales.size(); ++i) {
    if (scales(i) == Complex{0.0, 0.0}) fail(ErrorCode::InvalidArgument, "zero column scale");
  }
  SpectralDecomposition out = decomp;
  out.v = decomp.v * scales.asDiagonal();
  out.v_inv = scales.cwiseInverse().asDiagonal() * decomp.v_inv;
  return out;
}

GraphSignal first_order_difference(const GraphShift& shift, const GraphSignal& x) {
  require_dimension(shift.size(), x.size(), "first-order difference");
  return {x.values - shift.weights() * x.values};
}

double total_variation(const GraphShift& shift, const GraphSignal& x, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidP, "p must be a finite value >= 1");
  const Vector diff = first_order_difference(shift, x).values;
  double total = 0.0;
  for (Index i = 0; i < diff.size(); ++i) total += std::pow(std::abs(diff(i)), p);
  return total;
}

double reconstruction_error(const SpectralDecomposition& decomp, const GraphShift& shift) {
  return linalg::relative_error(decomp.reconstruct(), shift.weights());
}

RealVector real_part_checked(const Vector& v, double tol) {
  if (linalg::imaginary_ratio(v) > tol) {
    fail(ErrorCode::NumericalFailure, "vector has non-negligible imaginary part");
  }
  return v.real();
}

}  // namespace gsp
