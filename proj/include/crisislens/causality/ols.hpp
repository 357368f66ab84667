#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crisislens/common/matrix.hpp"

namespace crisislens::causality {

// Columns whose remaining norm after orthogonalisation falls to this level
// (columns are first scaled to unit norm) are treated as collinear.
inline constexpr double kRankTolerance = 1e-9;

struct OlsResult {
  std::vector<double> coefficients;
  double ssr = 0.0;
};

// Least squares by Householder QR with column pivoting on unit-norm-scaled
// columns. Throws InsufficientData unless rows > cols, RankDeficient for
// collinear columns.
OlsResult ols_fit(const Matrix& x, std::span<const double> y);

// Residual sums of squares of nested regressions: columns [0, split) alone
// and all columns. Pivoting stays inside each block, and the full-model
// residual is a tail of the restricted one, so ssr_full <= ssr_restricted
// holds exactly in floating point.
struct NestedSsr {
  double restricted = 0.0;
  double full = 0.0;
};
NestedSsr nested_ssr(const Matrix& x, std::span<const double> y, std::size_t split);

}  // namespace crisislens::causality
