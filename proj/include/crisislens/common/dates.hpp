#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace crisislens {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;
using Month = std::chrono::year_month;

// "YYYY-MM-DD". Throws std::invalid_argument on anything else.
Date parse_date(std::string_view text);
std::string format_date(Date d);

// "YYYY-MM"
std::string format_month(Month m);

// Accepts ISO 8601 ("2020-03-15T10:20:30Z", optional fractional seconds,
// "Z" or "+hh:mm" offsets) and the legacy "Wed Oct 10 20:19:24 +0000 2018"
// layout. Throws std::invalid_argument.
Timestamp parse_timestamp(std::string_view text);

// ISO 8601 with a trailing "Z", second resolution.
std::string format_timestamp(Timestamp t);

// Calendar date of `t` after shifting by `offset` (UTC when zero).
Date local_date(Timestamp t, std::chrono::minutes offset = std::chrono::minutes{0});

// Inclusive range of UTC calendar days.
struct DateWindow {
  Date start;
  Date end;

  bool valid() const { return start <= end; }
  bool contains(Date d) const { return d >= start && d <= end; }
  std::size_t days() const;
  // Zero-based offset of `d` from `start`; caller checks contains().
  std::size_t index_of(Date d) const;
  std::vector<Date> each_day() const;
};

// Calendar months fully covered by `w`. A trailing month that the window cuts
// short is dropped; a leading partial month is kept.
std::vector<Month> complete_months(const DateWindow& w);

// Every calendar month the window touches.
std::vector<Month> touched_months(const DateWindow& w);

}  // namespace crisislens
