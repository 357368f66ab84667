#include "crisislens/topics/reduce.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "crisislens/common/errors.hpp"

namespace crisislens::topics {

namespace {

bool all_rows_identical(const Matrix& points) {
  for (std::size_t r = 1; r < points.rows(); ++r) {
    for (std::size_t c = 0; c < points.cols(); ++c) {
      if (points(r, c) != points(0, c)) return false;
    }
  }
  return true;
}

}  // namespace

Pca fit_pca(const Matrix& points, std::size_t target_dim) {
  const std::size_t n = points.rows();
  const std::size_t dim = points.cols();
  if (target_dim == 0 || target_dim >= dim) {
    throw std::invalid_argument(
        fmt::format("reduce: target dimension {} must lie in [1, {})", target_dim, dim));
  }
  if (n < 2 || all_rows_identical(points)) {
    throw DegenerateCovariance("reduce: all points are identical");
  }

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> x(points.data().data(), static_cast<Eigen::Index>(n),
                                     static_cast<Eigen::Index>(dim));
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centred = x.rowwise() - mean;
  const Eigen::MatrixXd cov = (centred.transpose() * centred) / static_cast<double>(n - 1);
  if (cov.trace() <= 0.0) throw DegenerateCovariance("reduce: zero total variance");

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw DegenerateCovariance("reduce: eigensolver failed");

  Pca pca;
  pca.mean.assign(mean.data(), mean.data() + dim);
  pca.components = Matrix(target_dim, dim);
  for (std::size_t k = 0; k < target_dim; ++k) {
    // Eigenvalues come back ascending.
    const Eigen::Index col = static_cast<Eigen::Index>(dim - 1 - k);
    const Eigen::VectorXd v = solver.eigenvectors().col(col);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    }
    const double sign = v(arg) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      pca.components(k, i) = sign * v(static_cast<Eigen::Index>(i));
    }
    pca.explained_variance.push_back(std::max(0.0, solver.eigenvalues()(col)));
  }
  return pca;
}

Matrix project(const Pca& pca, const Matrix& points) {
  const std::size_t dim = pca.mean.size();
  if (points.cols() != dim) {
    throw DimensionMismatch(fmt::format("project: expected {} columns, got {}", dim, points.cols()));
  }
  Matrix out(points.rows(), pca.components.rows());
  for (std::size_t r = 0; r < points.rows(); ++r) {
    for (std::size_t k = 0; k < pca.components.rows(); ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim; ++i) acc += (points(r, i) - pca.mean[i]) * pca.components(k, i);
      out(r, k) = acc;
    }
  }
  return out;
}

Matrix reduce(const Matrix& points, std::size_t target_dim) {
  return project(fit_pca(points, target_dim), points);
}

}  // namespace crisislens::topics
