#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "crisislens/common/dates.hpp"

namespace crisislens::ingest {

// One normalised geotagged post.
struct TweetRecord {
  std::uint64_t id = 0;
  Timestamp created_at{};
  std::string text;        // as posted
  std::string clean_text;  // preprocess(text)
  std::string geo_full_name;
  std::string geo_country;
  std::string source;
  std::uint64_t author_id = 0;
  std::vector<std::string> hashtags;  // lowercase, no '#'
  std::vector<std::string> mentions;  // lowercase, no '@'

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

// Dotted JSON paths ("geo.full_name") for each record field. Entity paths
// point at an array whose items are strings or objects carrying one of the
// keys "tag", "text", "username" or "screen_name".
struct RecordSchema {
  std::string id = "id";
  std::string created_at = "created_at";
  std::string text = "text";
  std::string geo_full_name = "geo.full_name";
  std::string geo_country = "geo.country";
  std::string source = "source";
  std::string author_id = "author_id";
  std::string hashtags = "entities.hashtags";
  std::string mentions = "entities.mentions";

  // Nested layout of archived full-archive search results (the default).
  static RecordSchema archival();
  // Flat layout, also the canonical output layout.
  static RecordSchema flat();
  // "archival", "flat", or a path to a key=value file overriding the
  // archival defaults field by field.
  static RecordSchema resolve(std::string_view name_or_path);
};

// Parses one JSON line. Throws MalformedRecord when the line is not a JSON
// object or a field has the wrong type, MissingField when id, created_at or
// text is absent.
TweetRecord parse_record(std::string_view line, const RecordSchema& schema);

// `#\w+` and `@\w+` occurrences, lowercased and without the sigil. A sigil
// directly preceded by a word character does not start a tag.
std::vector<std::string> extract_hashtags(std::string_view text);
std::vector<std::string> extract_mentions(std::string_view text);

// Canonical line (flat layout, sorted keys) without trailing newline.
std::string to_canonical_json(const TweetRecord& record);

std::vector<TweetRecord> read_canonical_records(const std::filesystem::path& path);

}  // namespace crisislens::ingest
