#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crisislens/common/dates.hpp"
#include "crisislens/common/series.hpp"
#include "crisislens/sentiment/sentiment.hpp"

namespace crisislens::causality {

// Candidate series name, e.g. "tp8:NEG".
std::string candidate_name(int topic, sentiment::Sentiment s);

// One zero-filled daily volume series per (topic, sentiment) for topics
// 0 .. topic_count - 1, ordered by topic then NEG, NEU, POS. Noise (-1) is
// excluded. Throws EmptyWindow for an inverted window.
std::vector<LabeledSeries> build_series(std::span<const int> topics,
                                        std::span<const sentiment::Sentiment> labels,
                                        std::span<const Date> dates, const DateWindow& window,
                                        std::size_t topic_count);

struct TargetSeries {
  LabeledSeries series;
  std::size_t clamped = 0;  // negative values set to 0
};

// Two-column (date, value) CSV, optional header, any row order. The window
// must be fully covered; rows outside it are ignored. Throws MalformedFile,
// WindowMismatch, IoError.
TargetSeries parse_target(std::string_view csv_text, std::string name, const DateWindow& window);
TargetSeries load_target(const std::filesystem::path& path, std::string name,
                         const DateWindow& window);

// n-th order differencing; the first n days are dropped.
LabeledSeries difference(const LabeledSeries& s, std::size_t order);

}  // namespace crisislens::causality
