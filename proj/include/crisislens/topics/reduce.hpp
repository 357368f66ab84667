#pragma once

#include <cstddef>
#include <vector>

#include "crisislens/common/matrix.hpp"

namespace crisislens::topics {

struct Pca {
  std::vector<double> mean;
  // target_dim x dim; row k is the k-th principal axis. The entry of largest
  // magnitude in each row is positive (first such entry on ties).
  Matrix components;
  // Sample variance (n - 1 denominator) along each axis, descending.
  std::vector<double> explained_variance;
};

// Eigendecomposition of the sample covariance. Throws DegenerateCovariance
// when every point is identical, std::invalid_argument unless
// 0 < target_dim < dim.
Pca fit_pca(const Matrix& points, std::size_t target_dim);

// Centred projection onto the fitted axes.
Matrix project(const Pca& pca, const Matrix& points);

Matrix reduce(const Matrix& points, std::size_t target_dim);

}  // namespace crisislens::topics
