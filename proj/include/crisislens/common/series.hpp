#pragma once

#include <string>
#include <vector>

#include "crisislens/common/dates.hpp"

namespace crisislens {

// Daily values over contiguous UTC days starting at `start`.
struct LabeledSeries {
  std::string name;
  Date start;
  std::vector<double> values;

  Date date_at(std::size_t i) const { return start + std::chrono::days(static_cast<int>(i)); }
  friend bool operator==(const LabeledSeries&, const LabeledSeries&) = default;
};

}  // namespace crisislens
