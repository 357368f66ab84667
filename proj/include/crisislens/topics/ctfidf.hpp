#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crisislens/common/matrix.hpp"

namespace crisislens::topics {

struct Keyword {
  std::string term;
  double weight = 0.0;
  friend bool operator==(const Keyword&, const Keyword&) = default;
};

struct TopicSummary {
  int topic = -1;
  std::size_t size = 0;
  std::vector<Keyword> keywords;
  std::vector<double> centroid;
};

inline constexpr std::size_t kDefaultTopK = 10;

// Per class c and term t: tf(t, c) * ln(1 + A / f(t)), where f(t) counts t
// over all non-noise classes and A is the mean token count per class.
std::map<int, std::map<std::string, double>> class_term_weights(
    std::span<const int> labels, std::span<const std::vector<std::string>> docs);

// Top-k keywords by weight (ties by term), ascending topic id. The centroid
// is the re-normalised mean of member rows of `embeddings` when given.
// Throws NoTopics when every label is -1, DimensionMismatch on length
// disagreement.
std::vector<TopicSummary> ctfidf(std::span<const int> labels,
                                 std::span<const std::vector<std::string>> docs,
                                 std::size_t top_k = kDefaultTopK,
                                 const Matrix* embeddings = nullptr);

}  // namespace crisislens::topics
