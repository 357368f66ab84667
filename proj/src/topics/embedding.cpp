#include "crisislens/topics/embedding.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/common/parallel.hpp"
#include "crisislens/provider/client.hpp"

namespace crisislens::topics {

HashedFeature hash_feature(std::string_view feature, std::size_t dim, std::uint64_t seed) {
  const std::uint64_t h = fnv1a64(feature, seed);
  return {static_cast<std::size_t>((h >> 1) % dim), (h & 1U) ? 1.0 : -1.0};
}

std::vector<std::string> features_of(const std::vector<std::string>& tokens) {
  std::vector<std::string> out(tokens.begin(), tokens.end());
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    out.push_back(tokens[i] + ' ' + tokens[i + 1]);
  }
  return out;
}

void normalize_rows(Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    double ss = 0.0;
    for (const double v : row) ss += v * v;
    if (ss == 0.0) continue;
    const double norm = std::sqrt(ss);
    for (double& v : row) v /= norm;
  }
}

Matrix embed_default(std::span<const std::vector<std::string>> tokenized_docs,
                     const HashingOptions& options) {
  if (tokenized_docs.empty()) throw EmptyCorpus("embed_default: no documents");
  if (options.dim == 0) throw std::invalid_argument("embed_default: dim must be positive");
  const std::size_t n = tokenized_docs.size();

  // Ordered maps keep the accumulation order fixed per document.
  std::vector<std::map<std::string, double>> tf(n);
  parallel_for(n, options.workers, [&](std::size_t i) {
    for (auto& f : features_of(tokenized_docs[i])) tf[i][std::move(f)] += 1.0;
  });

  std::unordered_map<std::string_view, std::size_t> df;
  for (const auto& doc : tf) {
    for (const auto& [feature, count] : doc) ++df[feature];
  }

  Matrix out(n, options.dim);
  const double total = static_cast<double>(n);
  parallel_for(n, options.workers, [&](std::size_t i) {
    auto row = out.row(i);
    for (const auto& [feature, count] : tf[i]) {
      const double idf = std::log((1.0 + total) / (1.0 + static_cast<double>(df.at(feature)))) + 1.0;
      const auto hf = hash_feature(feature, options.dim, options.seed);
      row[hf.bucket] += hf.sign * count * idf;
    }
  });
  normalize_rows(out);
  return out;
}

Matrix embed_external(std::span<const std::string> texts, provider::ProviderClient& client,
                      std::size_t expected_dim) {
  if (texts.empty()) throw EmptyCorpus("embed_external: no documents");
  const std::size_t dim = expected_dim != 0 ? expected_dim : client.info().dim;
  const auto vectors = client.embed(texts);
  if (vectors.size() != texts.size()) {
    throw ProviderError(fmt::format("provider returned {} vectors for {} texts", vectors.size(),
                                    texts.size()));
  }
  Matrix out(texts.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) {
      throw DimensionMismatch(
          fmt::format("provider vector {} has dimension {}, expected {}", i, vectors[i].size(), dim));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      if (!std::isfinite(vectors[i][j])) {
        throw ProviderError(fmt::format("provider vector {} has a non-finite entry", i));
      }
      out(i, j) = vectors[i][j];
    }
  }
  normalize_rows(out);
  return out;
}

}  // namespace crisislens::topics
