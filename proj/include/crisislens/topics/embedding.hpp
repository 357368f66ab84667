#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crisislens/common/matrix.hpp"

namespace crisislens::provider {
class ProviderClient;
}

namespace crisislens::topics {

struct HashingOptions {
  std::size_t dim = 256;
  std::uint64_t seed = 0x5eed;
  unsigned workers = 1;
};

// Signed feature hashing of unigram and bigram features, weighted by
// tf * (ln((1 + N) / (1 + df)) + 1) over the given corpus, then
// L2-normalised. A document without features maps to the zero vector.
// Throws EmptyCorpus for an empty corpus.
Matrix embed_default(std::span<const std::vector<std::string>> tokenized_docs,
                     const HashingOptions& options = {});

// Bucket and sign a feature hashes to; exposed for collision checks.
struct HashedFeature {
  std::size_t bucket;
  double sign;
};
HashedFeature hash_feature(std::string_view feature, std::size_t dim, std::uint64_t seed);

// Unigrams followed by space-joined bigrams.
std::vector<std::string> features_of(const std::vector<std::string>& tokens);

// Vectors from the external provider, checked against `expected_dim` (0 =
// accept the handshake dimension) and re-normalised. Throws
// ProviderUnavailable, DimensionMismatch.
Matrix embed_external(std::span<const std::string> texts, provider::ProviderClient& client,
                      std::size_t expected_dim = 0);

// Scales every non-zero row to unit L2 norm.
void normalize_rows(Matrix& m);

}  // namespace crisislens::topics
