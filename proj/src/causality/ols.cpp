#include "crisislens/causality/ols.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "crisislens/common/errors.hpp"

namespace crisislens::causality {

namespace {

// Column-major working copy with unit-norm columns.
struct Work {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> a;
  std::vector<double> scale;  // original column norms
  std::vector<std::size_t> perm;
  std::vector<double> y;
  std::vector<double> diag;  // R diagonal

  double* col(std::size_t j) { return a.data() + j * n; }
};

Work load(const Matrix& x, std::span<const double> y) {
  Work w;
  w.n = x.rows();
  w.k = x.cols();
  if (y.size() != w.n) {
    throw DimensionMismatch(fmt::format("ols: {} rows but {} responses", w.n, y.size()));
  }
  if (w.n <= w.k) {
    throw InsufficientData(fmt::format("ols: {} observations for {} columns", w.n, w.k));
  }
  w.a.resize(w.n * w.k);
  w.scale.resize(w.k);
  w.perm.resize(w.k);
  w.diag.resize(w.k);
  std::iota(w.perm.begin(), w.perm.end(), 0);
  for (std::size_t j = 0; j < w.k; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < w.n; ++i) ss += x(i, j) * x(i, j);
    const double norm = std::sqrt(ss);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw RankDeficient(fmt::format("ols: column {} is zero or non-finite", j));
    }
    w.scale[j] = norm;
    double* c = w.col(j);
    for (std::size_t i = 0; i < w.n; ++i) c[i] = x(i, j) / norm;
  }
  w.y.assign(y.begin(), y.end());
  return w;
}

// Householder steps for columns [begin, end), pivoting within that range.
void factor_block(Work& w, std::size_t begin, std::size_t end) {
  const std::size_t n = w.n;
  std::vector<double> norms(w.k, 0.0);
  for (std::size_t j = begin; j < end; ++j) {
    const double* c = w.col(j);
    double ss = 0.0;
    for (std::size_t i = begin; i < n; ++i) ss += c[i] * c[i];
    norms[j] = ss;
  }
  for (std::size_t j = begin; j < end; ++j) {
    std::size_t p = j;
    for (std::size_t q = j + 1; q < end; ++q) {
      if (norms[q] > norms[p]) p = q;
    }
    if (p != j) {
      std::swap_ranges(w.col(j), w.col(j) + n, w.col(p));
      std::swap(norms[j], norms[p]);
      std::swap(w.perm[j], w.perm[p]);
      std::swap(w.scale[j], w.scale[p]);
    }
    double* v = w.col(j);
    double ss = 0.0;
    for (std::size_t i = j; i < n; ++i) ss += v[i] * v[i];
    const double alpha_norm = std::sqrt(ss);
    if (alpha_norm <= kRankTolerance) {
      throw RankDeficient(fmt::format("ols: column {} is collinear with earlier columns", w.perm[j]));
    }
    const double alpha = v[j] > 0.0 ? -alpha_norm : alpha_norm;
    // v = x - alpha e1, stored in place; R(j,j) = alpha.
    v[j] -= alpha;
    const double vtv = ss - 2.0 * alpha * (v[j] + alpha) + alpha * alpha;
    w.diag[j] = alpha;
    auto reflect = [&](double* target) {
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += v[i] * target[i];
      const double f = 2.0 * dot / vtv;
      for (std::size_t i = j; i < n; ++i) target[i] -= f * v[i];
    };
    for (std::size_t q = j + 1; q < w.k; ++q) reflect(w.col(q));
    reflect(w.y.data());
    for (std::size_t q = j + 1; q < end; ++q) {
      const double r = w.col(q)[j];
      norms[q] -= r * r;
      // Downdating loses accuracy once most of the norm is gone.
      if (norms[q] < 1e-4) {
        double s = 0.0;
        const double* c = w.col(q);
        for (std::size_t i = j + 1; i < n; ++i) s += c[i] * c[i];
        norms[q] = s;
      }
    }
  }
}

double tail_ss(const std::vector<double>& y, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t i = from; i < to; ++i) s += y[i] * y[i];
  return s;
}

}  // namespace

OlsResult ols_fit(const Matrix& x, std::span<const double> y) {
  Work w = load(x, y);
  factor_block(w, 0, w.k);
  // R holds the diagonal in w.diag and the strict upper triangle in a.
  std::vector<double> beta(w.k, 0.0);
  for (std::size_t jj = w.k; jj-- > 0;) {
    double acc = w.y[jj];
    for (std::size_t q = jj + 1; q < w.k; ++q) acc -= w.col(q)[jj] * beta[q];
    beta[jj] = acc / w.diag[jj];
  }
  OlsResult out;
  out.coefficients.assign(w.k, 0.0);
  for (std::size_t j = 0; j < w.k; ++j) out.coefficients[w.perm[j]] = beta[j] / w.scale[j];
  out.ssr = tail_ss(w.y, w.k, w.n);
  return out;
}

NestedSsr nested_ssr(const Matrix& x, std::span<const double> y, std::size_t split) {
  if (split == 0 || split > x.cols()) {
    throw std::invalid_argument(fmt::format("nested_ssr: split {} outside [1, {}]", split, x.cols()));
  }
  Work w = load(x, y);
  factor_block(w, 0, split);
  factor_block(w, split, w.k);
  NestedSsr out;
  out.full = tail_ss(w.y, w.k, w.n);
  out.restricted = tail_ss(w.y, split, w.k) + out.full;
  return out;
}

}  // namespace crisislens::causality
