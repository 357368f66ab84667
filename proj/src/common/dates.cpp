#include "crisislens/common/dates.hpp"

#include <array>
#include <charconv>
#include <fmt/format.h>
#include <stdexcept>

namespace crisislens {

namespace {

using namespace std::chrono;

int parse_int(std::string_view text, std::size_t pos, std::size_t len) {
  if (pos + len > text.size()) {
    throw std::invalid_argument("truncated date/time field");
  }
  int value = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw std::invalid_argument(fmt::format("non-digit in date/time: '{}'", text));
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw std::invalid_argument(fmt::format("unexpected character in date/time: '{}'", text));
  }
}

year_month_day checked_ymd(int y, int m, int d, std::string_view text) {
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw std::invalid_argument(fmt::format("invalid calendar date: '{}'", text));
  }
  return ymd;
}

seconds checked_hms(int h, int mi, int s, std::string_view text) {
  if (h > 23 || mi > 59 || s > 60) {
    throw std::invalid_argument(fmt::format("invalid time of day: '{}'", text));
  }
  return hours{h} + minutes{mi} + seconds{s};
}

Timestamp parse_iso(std::string_view text) {
  const int y = parse_int(text, 0, 4);
  expect(text, 4, '-');
  const int m = parse_int(text, 5, 2);
  expect(text, 7, '-');
  const int d = parse_int(text, 8, 2);
  const auto ymd = checked_ymd(y, m, d, text);
  if (text.size() == 10) {
    return sys_days{ymd};
  }
  if (text[10] != 'T' && text[10] != ' ') {
    throw std::invalid_argument(fmt::format("bad date/time separator: '{}'", text));
  }
  const int h = parse_int(text, 11, 2);
  expect(text, 13, ':');
  const int mi = parse_int(text, 14, 2);
  expect(text, 16, ':');
  const int s = parse_int(text, 17, 2);
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  }
  Timestamp t = sys_days{ymd} + checked_hms(h, mi, s, text);
  if (pos == text.size()) {
    return t;
  }
  if (text[pos] == 'Z' && pos + 1 == text.size()) {
    return t;
  }
  if ((text[pos] == '+' || text[pos] == '-') && text.size() >= pos + 5) {
    const int sign = text[pos] == '+' ? 1 : -1;
    const int oh = parse_int(text, pos + 1, 2);
    std::size_t mpos = pos + 3;
    if (text[mpos] == ':') ++mpos;
    const int om = parse_int(text, mpos, 2);
    if (mpos + 2 != text.size()) {
      throw std::invalid_argument(fmt::format("trailing characters in timestamp: '{}'", text));
    }
    return t - sign * (hours{oh} + minutes{om});
  }
  throw std::invalid_argument(fmt::format("unrecognised timezone suffix: '{}'", text));
}

// "Wed Oct 10 20:19:24 +0000 2018"
Timestamp parse_legacy(std::string_view text) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  if (text.size() != 30) {
    throw std::invalid_argument(fmt::format("unrecognised timestamp: '{}'", text));
  }
  const std::string_view mon = text.substr(4, 3);
  int m = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (kMonths[i] == mon) m = static_cast<int>(i) + 1;
  }
  if (m == 0) {
    throw std::invalid_argument(fmt::format("unknown month in timestamp: '{}'", text));
  }
  const int d = parse_int(text, 8, 2);
  const int h = parse_int(text, 11, 2);
  const int mi = parse_int(text, 14, 2);
  const int s = parse_int(text, 17, 2);
  const char sign_c = text[20];
  if (sign_c != '+' && sign_c != '-') {
    throw std::invalid_argument(fmt::format("bad offset in timestamp: '{}'", text));
  }
  const int oh = parse_int(text, 21, 2);
  const int om = parse_int(text, 23, 2);
  const int y = parse_int(text, 26, 4);
  const auto ymd = checked_ymd(y, m, d, text);
  const int sign = sign_c == '+' ? 1 : -1;
  return sys_days{ymd} + checked_hms(h, mi, s, text) - sign * (hours{oh} + minutes{om});
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10) {
    throw std::invalid_argument(fmt::format("expected YYYY-MM-DD, got '{}'", text));
  }
  const int y = parse_int(text, 0, 4);
  expect(text, 4, '-');
  const int m = parse_int(text, 5, 2);
  expect(text, 7, '-');
  const int d = parse_int(text, 8, 2);
  return sys_days{checked_ymd(y, m, d, text)};
}

std::string format_date(Date d) {
  const year_month_day ymd{d};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::string format_month(Month m) {
  return fmt::format("{:04d}-{:02d}", static_cast<int>(m.year()), static_cast<unsigned>(m.month()));
}

Timestamp parse_timestamp(std::string_view text) {
  if (text.size() >= 10 && text[4] == '-') {
    return parse_iso(text);
  }
  return parse_legacy(text);
}

std::string format_timestamp(Timestamp t) {
  const Date d = floor<days>(t);
  const hh_mm_ss hms{t - d};
  return fmt::format("{}T{:02d}:{:02d}:{:02d}Z", format_date(d), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

Date local_date(Timestamp t, minutes offset) { return floor<days>(t + offset); }

std::size_t DateWindow::days() const {
  if (!valid()) return 0;
  return static_cast<std::size_t>((end - start).count()) + 1;
}

std::size_t DateWindow::index_of(Date d) const {
  return static_cast<std::size_t>((d - start).count());
}

std::vector<Date> DateWindow::each_day() const {
  std::vector<Date> out;
  out.reserve(days());
  for (Date d = start; d <= end; d += std::chrono::days{1}) out.push_back(d);
  return out;
}

std::vector<Month> touched_months(const DateWindow& w) {
  std::vector<Month> out;
  if (!w.valid()) return out;
  const year_month_day first{w.start};
  const year_month_day last{w.end};
  const Month stop{last.year(), last.month()};
  for (Month m{first.year(), first.month()}; m <= stop; m += months{1}) out.push_back(m);
  return out;
}

std::vector<Month> complete_months(const DateWindow& w) {
  std::vector<Month> out = touched_months(w);
  if (out.empty()) return out;
  const Month tail = out.back();
  const Date tail_last = sys_days{year_month_day_last{tail.year(), month_day_last{tail.month()}}};
  if (w.end < tail_last) out.pop_back();
  return out;
}

}  // namespace crisislens
