#include "crisislens/topics/dynamic.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "crisislens/common/errors.hpp"

namespace crisislens::topics {

std::vector<DynamicRow> dynamic_topics(std::span<const int> labels,
                                       std::span<const std::vector<std::string>> docs,
                                       std::span<const Date> dates, const DateWindow& window,
                                       std::size_t top_k) {
  if (labels.size() != docs.size() || labels.size() != dates.size()) {
    throw DimensionMismatch(fmt::format("dynamic_topics: {} labels, {} documents, {} dates",
                                        labels.size(), docs.size(), dates.size()));
  }
  const auto months = complete_months(window);
  std::map<Month, std::vector<std::size_t>> members;
  for (const Month m : months) members[m];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || !window.contains(dates[i])) continue;
    const std::chrono::year_month_day ymd{dates[i]};
    const auto it = members.find(ymd.year() / ymd.month());
    if (it != members.end()) it->second.push_back(i);
  }

  std::vector<DynamicRow> rows;
  for (const auto& [month, idx] : members) {
    if (idx.empty()) continue;
    std::vector<int> sub_labels;
    std::vector<std::vector<std::string>> sub_docs;
    for (const std::size_t i : idx) {
      sub_labels.push_back(labels[i]);
      sub_docs.push_back(docs[i]);
    }
    for (auto& s : ctfidf(sub_labels, sub_docs, top_k)) {
      rows.push_back({s.topic, month, s.size, std::move(s.keywords)});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const DynamicRow& a, const DynamicRow& b) {
    if (a.topic != b.topic) return a.topic < b.topic;
    return a.month < b.month;
  });
  return rows;
}

}  // namespace crisislens::topics
