#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace crisislens::topics {

class StopWords {
 public:
  StopWords() = default;
  static StopWords builtin();
  // One word per line.
  static StopWords from_text(std::string_view text);

  bool contains(std::string_view word) const { return words_.count(std::string(word)) != 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Lowercase word tokens of a preprocessed text with the <HTTPURL> and
// <EMOJI> placeholders and stop-words removed.
std::vector<std::string> topic_tokens(std::string_view clean_text, const StopWords& stopwords);

std::vector<std::vector<std::string>> tokenize_all(std::span<const std::string> clean_texts,
                                                   const StopWords& stopwords,
                                                   unsigned workers = 1);

}  // namespace crisislens::topics
