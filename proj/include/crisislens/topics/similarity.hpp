#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crisislens/common/matrix.hpp"
#include "crisislens/topics/ctfidf.hpp"

namespace crisislens::topics {

struct SimilarityResult {
  // Cosine similarity of centroids, in input order. Symmetric with a unit
  // diagonal; zero-norm centroids have similarity 0 to everything else.
  Matrix similarity;
  // Leaf order of an average-linkage dendrogram over 1 - similarity, as
  // indices into the input.
  std::vector<std::size_t> order;
};

// Throws TooFewTopics for fewer than two summaries.
SimilarityResult similarity_matrix(std::span<const TopicSummary> summaries);

// Average-linkage (UPGMA) leaf order for a symmetric distance matrix. At
// each merge the child holding the smaller original index is placed first.
std::vector<std::size_t> average_linkage_order(const Matrix& distance);

}  // namespace crisislens::topics
