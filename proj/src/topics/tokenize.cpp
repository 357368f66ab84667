#include "crisislens/topics/tokenize.hpp"

#include "crisislens/common/bundled.hpp"
#include "crisislens/common/parallel.hpp"
#include "crisislens/common/text.hpp"
#include "crisislens/ingest/preprocess.hpp"

namespace crisislens::topics {

StopWords StopWords::builtin() { return from_text(bundled::stopwords()); }

StopWords StopWords::from_text(std::string_view text) {
  StopWords s;
  for (const auto& line : split(text, '\n')) {
    std::string w = ascii_lower(trim(line));
    if (!w.empty()) s.words_.insert(std::move(w));
  }
  return s;
}

std::vector<std::string> topic_tokens(std::string_view clean_text, const StopWords& stopwords) {
  std::vector<std::string> out;
  for (auto& w : word_runs(ingest::strip_placeholders(clean_text))) {
    if (!stopwords.contains(w)) out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::vector<std::string>> tokenize_all(std::span<const std::string> clean_texts,
                                                   const StopWords& stopwords, unsigned workers) {
  std::vector<std::vector<std::string>> out(clean_texts.size());
  parallel_for(clean_texts.size(), workers,
               [&](std::size_t i) { out[i] = topic_tokens(clean_texts[i], stopwords); });
  return out;
}

}  // namespace crisislens::topics
