#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crisislens/common/dates.hpp"
#include "crisislens/topics/ctfidf.hpp"

namespace crisislens::topics {

struct DynamicRow {
  int topic = -1;
  Month month;
  std::size_t size = 0;
  std::vector<Keyword> keywords;
};

// c-TF-IDF recomputed within each complete calendar month of `window` (a
// trailing partial month is dropped), with f(t) and A taken from that month
// alone. Cells without documents are omitted. Rows are ordered by topic,
// then month.
std::vector<DynamicRow> dynamic_topics(std::span<const int> labels,
                                       std::span<const std::vector<std::string>> docs,
                                       std::span<const Date> dates, const DateWindow& window,
                                       std::size_t top_k = kDefaultTopK);

}  // namespace crisislens::topics
