#include "crisislens/ingest/filter.hpp"

#include <algorithm>

#include "crisislens/common/bundled.hpp"
#include "crisislens/common/errors.hpp"
#include "crisislens/common/text.hpp"

namespace crisislens::ingest {

FilterTerm FilterTerm::parse(std::string_view raw) {
  std::string s = ascii_lower(trim(raw));
  if (!s.empty() && s.front() == '#') return {Kind::hashtag, s.substr(1)};
  return {Kind::keyword, std::move(s)};
}

std::vector<FilterTerm> TrackingFilter::parse_terms(std::string_view text) {
  std::vector<FilterTerm> out;
  for (const auto& line : split(text, '\n')) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    FilterTerm term = FilterTerm::parse(t);
    if (term.value.empty()) continue;
    if (std::find(out.begin(), out.end(), term) == out.end()) out.push_back(std::move(term));
  }
  return out;
}

std::vector<FilterTerm> TrackingFilter::default_terms() {
  return parse_terms(bundled::tracking_terms());
}

void TrackingFilter::validate() const {
  if (terms.empty()) throw ConfigError("tracking filter has no terms");
  for (const auto& t : terms) {
    if (t.value.empty() || ascii_lower(t.value) != t.value) {
      throw ConfigError("tracking filter terms must be non-empty and lowercase");
    }
  }
  if (!window.valid()) throw ConfigError("date window start is after its end");
}

bool keyword_in_text(std::string_view text, std::string_view keyword) {
  if (keyword.empty()) return false;
  std::size_t pos = 0;
  while ((pos = text.find(keyword, pos)) != std::string_view::npos) {
    const std::size_t end = pos + keyword.size();
    if (!is_word_before(text, pos) && !is_word_at(text, end)) return true;
    ++pos;
  }
  return false;
}

bool matches_terms(const TweetRecord& rec, const std::vector<FilterTerm>& terms) {
  const std::string lower = ascii_lower(rec.text);
  const auto has_tag = [&rec](std::string_view v) {
    return std::find(rec.hashtags.begin(), rec.hashtags.end(), v) != rec.hashtags.end();
  };
  return std::any_of(terms.begin(), terms.end(), [&](const FilterTerm& t) {
    if (t.kind == FilterTerm::Kind::hashtag) return has_tag(t.value);
    return keyword_in_text(lower, t.value) || has_tag(t.value);
  });
}

bool matches_filter(const TweetRecord& rec, const TrackingFilter& f) {
  if (f.require_country && rec.geo_country != *f.require_country) return false;
  if (!f.window.contains(local_date(rec.created_at, f.tz_offset))) return false;
  return matches_terms(rec, f.terms);
}

}  // namespace crisislens::ingest
