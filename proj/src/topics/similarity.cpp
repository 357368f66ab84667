#include "crisislens/topics/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "crisislens/common/errors.hpp"

namespace crisislens::topics {

std::vector<std::size_t> average_linkage_order(const Matrix& distance) {
  const std::size_t n = distance.rows();
  if (n == 0) return {};
  // Nearest-neighbour chain over a working copy updated by Lance-Williams.
  Matrix d = distance;
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<std::vector<std::size_t>> leaves(n);
  std::vector<std::size_t> min_leaf(n);
  for (std::size_t i = 0; i < n; ++i) {
    leaves[i] = {i};
    min_leaf[i] = i;
  }

  std::vector<std::size_t> chain;
  for (std::size_t merges = 0; merges + 1 < n; ++merges) {
    if (chain.empty()) {
      chain.push_back(static_cast<std::size_t>(
          std::find(active.begin(), active.end(), true) - active.begin()));
    }
    for (;;) {
      const std::size_t a = chain.back();
      const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : n;
      // Prefer the previous chain element on ties so the chain terminates.
      std::size_t best = prev;
      double best_d = prev < n ? d(a, prev) : std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (!active[j] || j == a) continue;
        if (d(a, j) < best_d) {
          best_d = d(a, j);
          best = j;
        }
      }
      if (best == prev) break;
      chain.push_back(best);
    }
    const std::size_t b = chain.back();
    chain.pop_back();
    const std::size_t a = chain.back();
    chain.pop_back();

    // Merge into the slot with the smaller index.
    const std::size_t keep = std::min(a, b);
    const std::size_t gone = std::max(a, b);
    const double sk = static_cast<double>(size[keep]);
    const double sg = static_cast<double>(size[gone]);
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j] || j == keep || j == gone) continue;
      const double v = (sk * d(keep, j) + sg * d(gone, j)) / (sk + sg);
      d(keep, j) = v;
      d(j, keep) = v;
    }
    auto& first = min_leaf[keep] < min_leaf[gone] ? leaves[keep] : leaves[gone];
    auto& second = min_leaf[keep] < min_leaf[gone] ? leaves[gone] : leaves[keep];
    std::vector<std::size_t> joined(first);
    joined.insert(joined.end(), second.begin(), second.end());
    leaves[keep] = std::move(joined);
    leaves[gone].clear();
    min_leaf[keep] = std::min(min_leaf[keep], min_leaf[gone]);
    size[keep] += size[gone];
    active[gone] = false;
  }
  return leaves[static_cast<std::size_t>(std::find(active.begin(), active.end(), true) -
                                         active.begin())];
}

SimilarityResult similarity_matrix(std::span<const TopicSummary> summaries) {
  const std::size_t n = summaries.size();
  if (n < 2) throw TooFewTopics(fmt::format("similarity: {} topics, need 2", n));
  const std::size_t dim = summaries[0].centroid.size();
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (summaries[i].centroid.size() != dim) {
      throw DimensionMismatch("similarity: centroids differ in dimension");
    }
    double ss = 0.0;
    for (const double v : summaries[i].centroid) ss += v * v;
    norms[i] = std::sqrt(ss);
  }

  SimilarityResult result;
  result.similarity = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    result.similarity(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double cos = 0.0;
      if (norms[i] > 0.0 && norms[j] > 0.0) {
        double dot = 0.0;
        for (std::size_t k = 0; k < dim; ++k) dot += summaries[i].centroid[k] * summaries[j].centroid[k];
        cos = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
      }
      result.similarity(i, j) = cos;
      result.similarity(j, i) = cos;
    }
  }

  Matrix dist(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist(i, j) = i == j ? 0.0 : 1.0 - result.similarity(i, j);
  }
  result.order = average_linkage_order(dist);
  return result;
}

}  // namespace crisislens::topics
