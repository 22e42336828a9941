#pragma once

#include <random>

#include <gtest/gtest.h>

#include "gsp/error.hpp"
#include "gsp/graph_core.hpp"
#include "gsp/random.hpp"

namespace testing_support {

// Directed graph with uniform (0, 1] weights on a random edge set; generic
// draws are diagonalizable with distinct eigenvalues.
inline gsp::GraphShift random_directed_shift(gsp::Index n, gsp::Seed seed, double density = 0.4) {
  gsp::Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  gsp::RealMatrix a = gsp::RealMatrix::Zero(n, n);
  for (gsp::Index i = 0; i < n; ++i) {
    for (gsp::Index j = 0; j < n; ++j) {
      if (i != j && u(rng) < density) a(i, j) = 1.0 - u(rng);
    }
  }
  // A ring keeps every vertex connected.
  for (gsp::Index i = 0; i < n; ++i) a(i, (i + 1) % n) += 0.5;
  return gsp::build_shift(a, true);
}

inline gsp::Vector random_complex(gsp::Index n, gsp::Rng& rng) {
  return gsp::gaussian_vector(n, rng).cast<gsp::Complex>() +
         gsp::Complex{0.0, 1.0} * gsp::gaussian_vector(n, rng).cast<gsp::Complex>();
}

// Code of the gsp::Error thrown by f; a test failure if nothing is thrown.
template <class F>
gsp::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const gsp::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected gsp::Error";
  return gsp::ErrorCode::InvalidArgument;
}

inline double max_abs_diff(const gsp::Matrix& a, const gsp::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testing_support
