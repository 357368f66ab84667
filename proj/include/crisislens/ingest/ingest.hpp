#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crisislens/ingest/filter.hpp"
#include "crisislens/ingest/record.hpp"

namespace crisislens::ingest {

struct IngestCounts {
  std::size_t read = 0;           // non-blank lines
  std::size_t malformed = 0;      // MalformedRecord
  std::size_t missing_field = 0;  // MissingField
  std::size_t duplicate = 0;      // id seen on an earlier line
  std::size_t filtered_out = 0;   // parsed, unique, rejected by the filter
  std::size_t matched = 0;

  friend bool operator==(const IngestCounts&, const IngestCounts&) = default;
};

struct IngestResult {
  std::vector<TweetRecord> records;  // sorted by (created_at, id)
  IngestCounts counts;
};

// Parses lines in parallel, drops duplicate ids (the earliest line wins),
// then applies `filter` when given. Output is independent of `workers`.
IngestResult ingest_lines(std::span<const std::string> lines, const RecordSchema& schema,
                          const TrackingFilter* filter, unsigned workers = 1);

// Sorted canonical lines, newline-terminated.
std::string write_canonical(std::span<const TweetRecord> records);

}  // namespace crisislens::ingest
