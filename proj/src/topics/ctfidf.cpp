#include "crisislens/topics/ctfidf.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "crisislens/common/errors.hpp"

namespace crisislens::topics {

std::map<int, std::map<std::string, double>> class_term_weights(
    std::span<const int> labels, std::span<const std::vector<std::string>> docs) {
  if (labels.size() != docs.size()) {
    throw DimensionMismatch(
        fmt::format("ctfidf: {} labels for {} documents", labels.size(), docs.size()));
  }
  std::map<int, std::map<std::string, double>> tf;
  std::map<std::string, double> f;
  double total_tokens = 0.0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (labels[i] < 0) continue;
    auto& counts = tf[labels[i]];
    for (const auto& t : docs[i]) {
      counts[t] += 1.0;
      f[t] += 1.0;
      total_tokens += 1.0;
    }
  }
  if (tf.empty()) throw NoTopics("ctfidf: no non-noise topic");
  const double avg = total_tokens / static_cast<double>(tf.size());
  for (auto& [topic, counts] : tf) {
    for (auto& [term, w] : counts) w *= std::log1p(avg / f.at(term));
  }
  return tf;
}

std::vector<TopicSummary> ctfidf(std::span<const int> labels,
                                 std::span<const std::vector<std::string>> docs, std::size_t top_k,
                                 const Matrix* embeddings) {
  if (embeddings != nullptr && embeddings->rows() != labels.size()) {
    throw DimensionMismatch(fmt::format("ctfidf: {} embeddings for {} labels", embeddings->rows(),
                                        labels.size()));
  }
  const auto weights = class_term_weights(labels, docs);

  std::vector<TopicSummary> out;
  for (const auto& [topic, terms] : weights) {
    TopicSummary s;
    s.topic = topic;
    for (const auto& [term, w] : terms) s.keywords.push_back({term, w});
    std::sort(s.keywords.begin(), s.keywords.end(), [](const Keyword& a, const Keyword& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.term < b.term;
    });
    if (s.keywords.size() > top_k) s.keywords.resize(top_k);
    out.push_back(std::move(s));
  }

  // Sizes and centroids in one pass over the documents.
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < out.size(); ++i) {
    index[out[i].topic] = i;
    if (embeddings != nullptr) out[i].centroid.assign(embeddings->cols(), 0.0);
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    auto& s = out[index.at(labels[i])];
    ++s.size;
    if (embeddings != nullptr) {
      const auto row = embeddings->row(i);
      for (std::size_t j = 0; j < row.size(); ++j) s.centroid[j] += row[j];
    }
  }
  for (auto& s : out) {
    double ss = 0.0;
    for (const double v : s.centroid) ss += v * v;
    if (ss > 0.0) {
      const double norm = std::sqrt(ss);
      for (double& v : s.centroid) v /= norm;
    }
  }
  return out;
}

}  // namespace crisislens::topics
