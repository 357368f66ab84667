#include "crisislens/causality/series.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/common/text.hpp"

namespace crisislens::causality {

std::string candidate_name(int topic, sentiment::Sentiment s) {
  return fmt::format("tp{}:{}", topic, sentiment::sentiment_short(s));
}

std::vector<LabeledSeries> build_series(std::span<const int> topics,
                                        std::span<const sentiment::Sentiment> labels,
                                        std::span<const Date> dates, const DateWindow& window,
                                        std::size_t topic_count) {
  if (!window.valid()) throw EmptyWindow("build_series: window end precedes start");
  std::vector<std::string> group_of(topics.size());
  for (std::size_t i = 0; i < topics.size(); ++i) {
    if (topics[i] >= 0) group_of[i] = fmt::format("tp{}", topics[i]);
  }
  std::vector<std::string> groups;
  for (std::size_t t = 0; t < topic_count; ++t) groups.push_back(fmt::format("tp{}", t));
  return sentiment::daily_series(group_of, dates, labels, window, groups);
}

TargetSeries parse_target(std::string_view csv_text, std::string name, const DateWindow& window) {
  if (!window.valid()) throw EmptyWindow("load_target: window end precedes start");
  std::map<Date, double> rows;
  std::size_t line_no = 0;
  for (const auto& row : parse_csv(csv_text)) {
    ++line_no;
    if (row.empty() || (row.size() == 1 && trim(row[0]).empty())) continue;
    if (row.size() != 2) {
      throw MalformedFile(fmt::format("{} row {}: expected 2 columns, got {}", name, line_no, row.size()));
    }
    Date d;
    try {
      d = parse_date(trim(row[0]));
    } catch (const std::invalid_argument&) {
      if (line_no == 1) continue;  // header
      throw MalformedFile(fmt::format("{} row {}: bad date '{}'", name, line_no, row[0]));
    }
    const std::string value = trim(row[1]);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
      throw MalformedFile(fmt::format("{} row {}: bad value '{}'", name, line_no, row[1]));
    }
    if (!rows.emplace(d, v).second) {
      throw MalformedFile(fmt::format("{} row {}: duplicate date {}", name, line_no, format_date(d)));
    }
  }

  TargetSeries out;
  out.series.name = std::move(name);
  out.series.start = window.start;
  out.series.values.reserve(window.days());
  for (const Date d : window.each_day()) {
    const auto it = rows.find(d);
    if (it == rows.end()) {
      throw WindowMismatch(
          fmt::format("{}: no value for {} inside the analysis window", out.series.name, format_date(d)));
    }
    double v = it->second;
    if (v < 0.0) {
      v = 0.0;
      ++out.clamped;
    }
    out.series.values.push_back(v);
  }
  return out;
}

TargetSeries load_target(const std::filesystem::path& path, std::string name,
                         const DateWindow& window) {
  return parse_target(read_file(path), std::move(name), window);
}

LabeledSeries difference(const LabeledSeries& s, std::size_t order) {
  LabeledSeries out = s;
  for (std::size_t k = 0; k < order; ++k) {
    if (out.values.empty()) break;
    std::vector<double> d;
    for (std::size_t i = 1; i < out.values.size(); ++i) d.push_back(out.values[i] - out.values[i - 1]);
    out.values = std::move(d);
    out.start += std::chrono::days(1);
  }
  return out;
}

}  // namespace crisislens::causality
