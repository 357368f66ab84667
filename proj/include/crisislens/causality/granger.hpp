#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crisislens/common/series.hpp"

namespace crisislens::causality {

// P(F(d1, d2) > f) = I_{d2 / (d2 + d1 f)}(d2 / 2, d1 / 2). f <= 0 gives 1.
double f_upper_tail(double f, double d1, double d2);

struct GrangerResult {
  std::size_t lag = 0;
  std::size_t n = 0;  // usable observations, len - lag
  double f = 0.0;
  double p = 1.0;
  double ssr_restricted = 0.0;
  double ssr_unrestricted = 0.0;
  std::size_t df1 = 0;
  std::size_t df2 = 0;
};

// Does x help predict y at lag L? Restricted model: y_t on 1, y_{t-1..t-L};
// unrestricted adds x_{t-1..t-L}. Both use the same rows t = L .. len - 1.
// Throws InsufficientData unless len - L >= 2L + 2, RankDeficient for
// collinear regressors or a perfect restricted fit, DimensionMismatch for
// unequal lengths.
GrangerResult granger_test(std::span<const double> x, std::span<const double> y, std::size_t lag);

// Shortest series granger_test accepts at `lag`.
constexpr std::size_t min_series_length(std::size_t lag) { return 3 * lag + 2; }

enum class LagStatus { tested, rank_deficient, insufficient_data };

struct LagResult {
  std::size_t lag = 0;
  LagStatus status = LagStatus::tested;
  double f = 0.0;
  double p = 1.0;
  bool significant = false;
};

struct GrangerReport {
  std::string candidate;
  std::string target;
  double alpha = 0.05;
  std::vector<LagResult> lags;
  std::vector<std::size_t> significant_lags;
  std::size_t significant_count() const { return significant_lags.size(); }
  // Smallest tested p-value and its lag; p = 1, lag = 0 when nothing was
  // testable.
  double min_p = 1.0;
  std::size_t argmin_lag = 0;
};

// Lags 1..max_lag; untestable lags are recorded and never significant.
// Throws InsufficientData when the series are too short for max_lag,
// WindowMismatch when start dates or lengths differ.
GrangerReport granger_scan(const LabeledSeries& x, const LabeledSeries& y, std::size_t max_lag,
                           double alpha = 0.05, unsigned workers = 1);

// Ascending lags; runs of three or more become "a--b", shorter runs are
// listed one by one, joined by ", ".
std::string compress_lags(std::span<const std::size_t> lags);

struct SuiteOptions {
  std::size_t max_lag = 90;
  double alpha = 0.05;
  unsigned workers = 1;
};

// Scans every candidate against `target`, plus each of `extra` (e.g. the
// cases series for the deaths target). Only candidates with at least one
// significant lag are kept, ordered by significant count descending then
// candidate name.
std::vector<GrangerReport> run_suite(std::span<const LabeledSeries> candidates,
                                     const LabeledSeries& target,
                                     std::span<const LabeledSeries> extra,
                                     const SuiteOptions& options);

}  // namespace crisislens::causality
