#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <utility>
#include <span>
#include <string>
#include <vector>

#include "crisislens/common/matrix.hpp"

namespace testsupport {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(CRISISLENS_TEST_DATA) / name;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("crisislens_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

using Rng = std::mt19937_64;

inline std::vector<double> gaussian(Rng& rng, std::size_t n, double sd = 1.0) {
  std::normal_distribution<double> nd(0.0, sd);
  std::vector<double> out(n);
  for (auto& v : out) v = nd(rng);
  return out;
}

inline crisislens::Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  crisislens::Matrix m(rows, cols);
  std::normal_distribution<double> nd;
  for (auto& v : m.data()) v = nd(rng);
  return m;
}

inline double cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

// Cyclic Jacobi rotations; eigenvalues of a symmetric matrix, descending.
inline std::vector<double> jacobi_eigenvalues(crisislens::Matrix a) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

inline crisislens::Matrix sample_covariance(const crisislens::Matrix& x) {
  const std::size_t n = x.rows(), d = x.cols();
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += x(i, j) / static_cast<double>(n);
  crisislens::Matrix c(d, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        c(j, k) += (x(i, j) - mean[j]) * (x(i, k) - mean[k]) / static_cast<double>(n - 1);
  return c;
}

// Two isotropic gaussian blobs of `per_blob` points each, centres `separation`
// apart along a random direction, spread `spread`. Truth is 0 / 1 by blob.
struct Blobs {
  crisislens::Matrix points;
  std::vector<int> truth;
};

inline Blobs two_blobs(Rng& rng, std::size_t per_blob, std::size_t dim, double separation,
                       double spread) {
  auto dir = gaussian(rng, dim);
  double norm = 0;
  for (double v : dir) norm += v * v;
  norm = std::sqrt(norm);
  Blobs b{crisislens::Matrix(2 * per_blob, dim), {}};
  for (std::size_t i = 0; i < 2 * per_blob; ++i) {
    const int side = i < per_blob ? 0 : 1;
    const auto noise = gaussian(rng, dim, spread);
    for (std::size_t j = 0; j < dim; ++j) b.points(i, j) = side * separation * dir[j] / norm + noise[j];
    b.truth.push_back(side);
  }
  return b;
}

// Same partition up to renaming (noise must match exactly).
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::pair<int, int>> map;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] < 0) != (b[i] < 0)) return false;
    if (a[i] < 0) continue;
    for (const auto& [x, y] : map) {
      if ((x == a[i]) != (y == b[i])) return false;
    }
    map.emplace_back(a[i], b[i]);
  }
  return true;
}

// Random labelled corpus over a small vocabulary, with some noise documents.
struct Corpus {
  std::vector<int> labels;
  std::vector<std::vector<std::string>> docs;
};

inline Corpus random_corpus(Rng& rng, int classes, std::size_t docs, std::size_t vocab) {
  Corpus c;
  for (std::size_t i = 0; i < docs; ++i) {
    int label = static_cast<int>(rng() % (classes + 1)) - 1;
    if (i < static_cast<std::size_t>(classes)) label = static_cast<int>(i);
    c.labels.push_back(label);
    std::vector<std::string> doc;
    const std::size_t len = 1 + rng() % 8;
    for (std::size_t k = 0; k < len; ++k) {
      // Each class prefers its own slice of the vocabulary.
      const std::size_t base = label < 0 ? 0 : static_cast<std::size_t>(label) * 3;
      doc.push_back("w" + std::to_string((base + rng() % (vocab / 2 + 1)) % vocab));
    }
    c.docs.push_back(std::move(doc));
  }
  return c;
}

}  // namespace testsupport
