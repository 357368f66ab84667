#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crisislens/common/dates.hpp"
#include "crisislens/ingest/record.hpp"

namespace crisislens::ingest {

struct FilterTerm {
  enum class Kind { keyword, hashtag };
  Kind kind = Kind::keyword;
  std::string value;  // lowercase; hashtags stored without '#'

  // "#foo" is a hashtag term, anything else a keyword.
  static FilterTerm parse(std::string_view raw);
  friend bool operator==(const FilterTerm&, const FilterTerm&) = default;
};

struct TrackingFilter {
  std::vector<FilterTerm> terms;
  std::optional<std::string> require_country;
  DateWindow window{};
  std::chrono::minutes tz_offset{0};

  // Throws ConfigError when terms are empty or the window is inverted.
  void validate() const;

  // The collection query's keyword and hashtag list.
  static std::vector<FilterTerm> default_terms();
  // One term per line; blank lines ignored.
  static std::vector<FilterTerm> parse_terms(std::string_view text);
};

// Keyword terms match the lowercase text as substrings whose ends sit on
// non-word boundaries, or a hashtag equal to the keyword; hashtag terms match
// a hashtag exactly. Country must equal require_country when set, and the
// (offset) calendar date must fall inside the window.
bool matches_filter(const TweetRecord& rec, const TrackingFilter& f);

// The term clause alone.
bool matches_terms(const TweetRecord& rec, const std::vector<FilterTerm>& terms);

bool keyword_in_text(std::string_view lowercase_text, std::string_view keyword);

}  // namespace crisislens::ingest
