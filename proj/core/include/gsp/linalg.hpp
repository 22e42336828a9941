#pragma once

#include "gsp/types.hpp"

// Small dense helpers shared across modules.
namespace gsp::linalg {

/// Singular values in descending order. An empty matrix yields an empty vector.
RealVector singular_values(const Matrix& a);

double spectral_norm(const Matrix& a);

/// sigma_max / sigma_min over the min(rows, cols) singular values; +inf when
/// the smallest one is zero.
double condition_number(const Matrix& a);

/// Number of singular values above rel_tol * sigma_max.
Index numerical_rank(const Matrix& a, double rel_tol);

/// Moore-Penrose pseudo-inverse via SVD, truncating at rel_tol * sigma_max.
Matrix pseudo_inverse(const Matrix& a, double rel_tol = 1e-14);

/// ||a - b||_F / max(||b||_F, tiny).
double relative_error(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& a);
bool is_hermitian(const Matrix& a, double rel_tol);

/// max |Im(a_ij)| relative to max |a_ij| (0 for a zero matrix).
double imaginary_ratio(const Matrix& a);

}  // namespace gsp::linalg
