#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace crisislens::geo {

// Australian states and territories, in the order used for every report.
enum class Region : std::uint8_t { VIC, NSW, QLD, WA, SA, ACT, TAS, NT, UNKNOWN };

inline constexpr std::array<Region, 8> kStates = {Region::VIC, Region::NSW, Region::QLD,
                                                  Region::WA,  Region::SA,  Region::ACT,
                                                  Region::TAS, Region::NT};

std::string_view region_code(Region r);
std::string_view region_name(Region r);
std::optional<Region> parse_region_code(std::string_view code);

// Lowercase, whitespace runs collapsed, one space after every comma, no
// space before one, ends trimmed: "  Melbourne ,VICTORIA " -> "melbourne, victoria".
std::string normalize_place_key(std::string_view place);

class Gazetteer {
 public:
  // Suffix table only (state names and abbreviations).
  Gazetteer();

  // Bundled place list.
  static Gazetteer builtin();
  // place<TAB>code lines; '#' starts a comment line. Throws IoError /
  // MalformedFile.
  static Gazetteer from_file(const std::filesystem::path& path);
  static Gazetteer from_text(std::string_view text, std::string_view origin = "<text>");

  void add_exact(std::string_view place, Region region);

  // Exact lookup, then the segment after the last comma against state names,
  // then the segment before the first comma against state names and exact
  // entries, else UNKNOWN.
  Region normalize_place(std::string_view geo_full_name) const;

  std::size_t exact_size() const { return exact_.size(); }

 private:
  std::optional<Region> lookup_state(std::string_view key) const;

  std::unordered_map<std::string, Region> exact_;
  std::unordered_map<std::string, Region> suffix_;
};

}  // namespace crisislens::geo
