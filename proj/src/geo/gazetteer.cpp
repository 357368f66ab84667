#include "crisislens/geo/gazetteer.hpp"

#include <fmt/format.h>

#include "crisislens/common/bundled.hpp"
#include "crisislens/common/errors.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/common/text.hpp"

namespace crisislens::geo {

namespace {

struct StateNames {
  Region region;
  std::string_view code;
  std::string_view name;
};

constexpr std::array<StateNames, 8> kNames = {{
    {Region::VIC, "VIC", "Victoria"},
    {Region::NSW, "NSW", "New South Wales"},
    {Region::QLD, "QLD", "Queensland"},
    {Region::WA, "WA", "Western Australia"},
    {Region::SA, "SA", "South Australia"},
    {Region::ACT, "ACT", "Australian Capital Territory"},
    {Region::TAS, "TAS", "Tasmania"},
    {Region::NT, "NT", "Northern Territory"},
}};

}  // namespace

std::string_view region_code(Region r) {
  return r == Region::UNKNOWN ? "UNKNOWN" : kNames[static_cast<std::size_t>(r)].code;
}

std::string_view region_name(Region r) {
  return r == Region::UNKNOWN ? "Unknown" : kNames[static_cast<std::size_t>(r)].name;
}

std::optional<Region> parse_region_code(std::string_view code) {
  const std::string upper = [&] {
    std::string s(trim(code));
    for (char& c : s) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return s;
  }();
  for (const auto& n : kNames) {
    if (n.code == upper) return n.region;
  }
  if (upper == "UNKNOWN") return Region::UNKNOWN;
  return std::nullopt;
}

std::string normalize_place_key(std::string_view place) {
  std::string out;
  out.reserve(place.size());
  bool pending_space = false;
  for (const char raw : place) {
    const char c = (raw >= 'A' && raw <= 'Z') ? static_cast<char>(raw - 'A' + 'a') : raw;
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (c == ',') {
      out += ',';
      pending_space = true;
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  // A trailing comma keeps no space after it.
  return out;
}

Gazetteer::Gazetteer() {
  for (const auto& n : kNames) {
    suffix_.emplace(ascii_lower(n.code), n.region);
    suffix_.emplace(ascii_lower(n.name), n.region);
  }
  suffix_.emplace("tas.", Region::TAS);
  suffix_.emplace("vic.", Region::VIC);
  suffix_.emplace("qld.", Region::QLD);
  suffix_.emplace("n.s.w.", Region::NSW);
  suffix_.emplace("a.c.t.", Region::ACT);
}

Gazetteer Gazetteer::builtin() { return from_text(bundled::gazetteer(), "<bundled gazetteer>"); }

Gazetteer Gazetteer::from_file(const std::filesystem::path& path) {
  return from_text(read_file(path), path.string());
}

Gazetteer Gazetteer::from_text(std::string_view text, std::string_view origin) {
  Gazetteer g;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw MalformedFile(fmt::format("{}:{}: expected place<TAB>code", origin, line_no));
    }
    const auto region = parse_region_code(line.substr(tab + 1));
    if (!region) {
      throw MalformedFile(fmt::format("{}:{}: unknown region code '{}'", origin, line_no,
                                      line.substr(tab + 1)));
    }
    g.add_exact(line.substr(0, tab), *region);
  }
  return g;
}

void Gazetteer::add_exact(std::string_view place, Region region) {
  exact_[normalize_place_key(place)] = region;
}

std::optional<Region> Gazetteer::lookup_state(std::string_view key) const {
  const auto it = suffix_.find(std::string(key));
  if (it == suffix_.end()) return std::nullopt;
  return it->second;
}

Region Gazetteer::normalize_place(std::string_view geo_full_name) const {
  const std::string key = normalize_place_key(geo_full_name);
  if (key.empty()) return Region::UNKNOWN;
  if (const auto it = exact_.find(key); it != exact_.end()) return it->second;

  const std::size_t last_comma = key.rfind(',');
  if (last_comma != std::string::npos) {
    if (const auto r = lookup_state(trim(key.substr(last_comma + 1)))) return *r;
  }
  const std::string head = trim(key.substr(0, key.find(',')));
  if (const auto r = lookup_state(head)) return *r;
  if (last_comma != std::string::npos) {
    if (const auto it = exact_.find(head); it != exact_.end()) return it->second;
  }
  return Region::UNKNOWN;
}

}  // namespace crisislens::geo
