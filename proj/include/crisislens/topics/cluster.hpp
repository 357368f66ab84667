#pragma once

#include <cstddef>
#include <vector>

#include "crisislens/common/matrix.hpp"

namespace crisislens::topics {

struct ClusterOptions {
  std::size_t min_cluster_size = 10;
  // Neighbour count for core distances, the point itself included. Zero
  // means min_cluster_size.
  std::size_t min_samples = 0;
  unsigned workers = 1;
};

// Hierarchical density-based clustering over euclidean distance: core
// distances, mutual-reachability minimum spanning tree, condensed tree, and
// excess-of-mass cluster selection (the root is never selected). If every
// point is identical the whole set is one cluster. Labels are numbered by
// the smallest member index; -1 marks noise. Throws TooFewPoints when there
// are fewer than min_cluster_size points.
std::vector<int> cluster(const Matrix& points, const ClusterOptions& options);

}  // namespace crisislens::topics
