#include "crisislens/ingest/ingest.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/parallel.hpp"

namespace crisislens::ingest {

namespace {

enum class Outcome { blank, parsed, malformed, missing_field };

struct LineResult {
  Outcome outcome = Outcome::blank;
  std::optional<TweetRecord> record;
};

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; });
}

}  // namespace

IngestResult ingest_lines(std::span<const std::string> lines, const RecordSchema& schema,
                          const TrackingFilter* filter, unsigned workers) {
  std::vector<LineResult> parsed(lines.size());
  parallel_for(lines.size(), workers, [&](std::size_t i) {
    if (is_blank(lines[i])) return;
    try {
      parsed[i].record = parse_record(lines[i], schema);
      parsed[i].outcome = Outcome::parsed;
    } catch (const MissingField&) {
      parsed[i].outcome = Outcome::missing_field;
    } catch (const MalformedRecord&) {
      parsed[i].outcome = Outcome::malformed;
    }
  });

  IngestResult result;
  auto& counts = result.counts;
  std::unordered_set<std::uint64_t> seen;
  for (auto& line : parsed) {
    switch (line.outcome) {
      case Outcome::blank:
        continue;
      case Outcome::malformed:
        ++counts.read;
        ++counts.malformed;
        continue;
      case Outcome::missing_field:
        ++counts.read;
        ++counts.missing_field;
        continue;
      case Outcome::parsed:
        ++counts.read;
        break;
    }
    if (!seen.insert(line.record->id).second) {
      ++counts.duplicate;
      continue;
    }
    if (filter != nullptr && !matches_filter(*line.record, *filter)) {
      ++counts.filtered_out;
      continue;
    }
    result.records.push_back(std::move(*line.record));
  }
  counts.matched = result.records.size();
  std::sort(result.records.begin(), result.records.end(),
            [](const TweetRecord& a, const TweetRecord& b) {
              return a.created_at != b.created_at ? a.created_at < b.created_at : a.id < b.id;
            });
  return result;
}

std::string write_canonical(std::span<const TweetRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_canonical_json(r);
    out += '\n';
  }
  return out;
}

}  // namespace crisislens::ingest
