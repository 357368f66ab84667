#include "crisislens/causality/granger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include "crisislens/causality/ols.hpp"
#include "crisislens/common/errors.hpp"
#include "crisislens/common/parallel.hpp"

namespace crisislens::causality {

double f_upper_tail(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) {
    throw std::invalid_argument(fmt::format("f_upper_tail: bad degrees of freedom ({}, {})", d1, d2));
  }
  if (std::isnan(f)) throw std::invalid_argument("f_upper_tail: F is NaN");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  // Pick the argument form that avoids cancellation in 1 - x.
  const double x = d2 / (d2 + d1 * f);
  if (x > 0.5) return boost::math::ibetac(d1 / 2.0, d2 / 2.0, d1 * f / (d2 + d1 * f));
  return boost::math::ibeta(d2 / 2.0, d1 / 2.0, x);
}

GrangerResult granger_test(std::span<const double> x, std::span<const double> y, std::size_t lag) {
  if (x.size() != y.size()) {
    throw DimensionMismatch(fmt::format("granger_test: lengths {} and {}", x.size(), y.size()));
  }
  if (lag == 0) throw std::invalid_argument("granger_test: lag must be positive");
  if (y.size() < min_series_length(lag)) {
    throw InsufficientData(fmt::format("granger_test: {} observations, lag {} needs {}", y.size(),
                                       lag, min_series_length(lag)));
  }
  const std::size_t n = y.size() - lag;
  const std::size_t k = 2 * lag + 1;
  Matrix design(n, k);
  std::vector<double> response(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t t = r + lag;
    response[r] = y[t];
    design(r, 0) = 1.0;
    for (std::size_t i = 1; i <= lag; ++i) {
      design(r, i) = y[t - i];
      design(r, lag + i) = x[t - i];
    }
  }
  const NestedSsr ssr = nested_ssr(design, response, lag + 1);

  GrangerResult out;
  out.lag = lag;
  out.n = n;
  out.df1 = lag;
  out.df2 = n - k;
  out.ssr_restricted = ssr.restricted;
  out.ssr_unrestricted = ssr.full;
  if (ssr.full == 0.0) {
    if (ssr.restricted == 0.0) {
      throw RankDeficient("granger_test: the restricted model already fits exactly");
    }
    out.f = std::numeric_limits<double>::infinity();
    out.p = 0.0;
    return out;
  }
  out.f = ((ssr.restricted - ssr.full) / static_cast<double>(out.df1)) /
          (ssr.full / static_cast<double>(out.df2));
  out.p = f_upper_tail(out.f, static_cast<double>(out.df1), static_cast<double>(out.df2));
  return out;
}

GrangerReport granger_scan(const LabeledSeries& x, const LabeledSeries& y, std::size_t max_lag,
                           double alpha, unsigned workers) {
  if (x.start != y.start || x.values.size() != y.values.size()) {
    throw WindowMismatch(fmt::format("granger_scan: '{}' and '{}' are not aligned", x.name, y.name));
  }
  if (max_lag == 0) throw std::invalid_argument("granger_scan: max_lag must be positive");
  if (y.values.size() < min_series_length(max_lag)) {
    throw InsufficientData(fmt::format("granger_scan: {} days, max_lag {} needs {}",
                                       y.values.size(), max_lag, min_series_length(max_lag)));
  }
  GrangerReport report;
  report.candidate = x.name;
  report.target = y.name;
  report.alpha = alpha;
  report.lags.resize(max_lag);
  parallel_for(max_lag, workers, [&](std::size_t i) {
    LagResult& r = report.lags[i];
    r.lag = i + 1;
    try {
      const auto g = granger_test(x.values, y.values, r.lag);
      r.f = g.f;
      r.p = g.p;
      r.significant = g.p < alpha;
    } catch (const RankDeficient&) {
      r.status = LagStatus::rank_deficient;
    } catch (const InsufficientData&) {
      r.status = LagStatus::insufficient_data;
    }
  });
  for (const auto& r : report.lags) {
    if (r.status != LagStatus::tested) continue;
    if (r.significant) report.significant_lags.push_back(r.lag);
    if (report.argmin_lag == 0 || r.p < report.min_p) {
      report.min_p = r.p;
      report.argmin_lag = r.lag;
    }
  }
  return report;
}

std::string compress_lags(std::span<const std::size_t> lags) {
  std::string out;
  auto emit = [&out](const std::string& item) {
    if (!out.empty()) out += ", ";
    out += item;
  };
  for (std::size_t i = 0; i < lags.size();) {
    std::size_t j = i;
    while (j + 1 < lags.size() && lags[j + 1] == lags[j] + 1) ++j;
    if (j - i >= 2) {
      emit(fmt::format("{}--{}", lags[i], lags[j]));
    } else {
      for (std::size_t q = i; q <= j; ++q) emit(std::to_string(lags[q]));
    }
    i = j + 1;
  }
  return out;
}

std::vector<GrangerReport> run_suite(std::span<const LabeledSeries> candidates,
                                     const LabeledSeries& target,
                                     std::span<const LabeledSeries> extra,
                                     const SuiteOptions& options) {
  std::vector<const LabeledSeries*> all;
  for (const auto& c : candidates) all.push_back(&c);
  for (const auto& c : extra) all.push_back(&c);

  // Parallel over candidates; each scan runs sequentially.
  std::vector<GrangerReport> reports(all.size());
  parallel_for(all.size(), options.workers, [&](std::size_t i) {
    reports[i] = granger_scan(*all[i], target, options.max_lag, options.alpha, 1);
  });

  std::vector<GrangerReport> out;
  for (auto& r : reports) {
    if (r.significant_count() > 0) out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const GrangerReport& a, const GrangerReport& b) {
    if (a.significant_count() != b.significant_count()) {
      return a.significant_count() > b.significant_count();
    }
    return a.candidate < b.candidate;
  });
  return out;
}

}  // namespace crisislens::causality
