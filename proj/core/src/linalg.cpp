#include "gsp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace gsp::linalg {

namespace {

// BDCSVD switches to Jacobi internally below its block size, so small
// matrices stay on the accurate path.
template <typename Svd>
RealVector values_of(const Matrix& a) {
  Svd svd(a);
  return svd.singularValues();
}

}  // namespace

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector();
  if (std::min(a.rows(), a.cols()) <= 16) return values_of<Eigen::JacobiSVD<Matrix>>(a);
  return values_of<Eigen::BDCSVD<Matrix>>(a);
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double condition_number(const Matrix& a) {
  const RealVector s = singular_values(a);
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Index numerical_rank(const Matrix& a, double rel_tol) {
  const RealVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  return static_cast<Index>(std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

Matrix pseudo_inverse(const Matrix& a, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  RealVector inv = RealVector::Zero(s.size());
  const double cut = s.size() > 0 ? rel_tol * s(0) : 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

double relative_error(const Matrix& a, const Matrix& b) {
  const double denom = std::max(b.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / denom;
}

bool all_finite(const Matrix& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

bool is_hermitian(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

double imaginary_ratio(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const double peak = a.cwiseAbs().maxCoeff();
  if (peak == 0.0) return 0.0;
  return a.imag().cwiseAbs().maxCoeff() / peak;
}

}  // namespace gsp::linalg
