#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Core>

namespace gsp {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

using Seed = std::uint64_t;

}  // namespace gsp
