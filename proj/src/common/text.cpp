#include "crisislens/common/text.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <utility>

namespace crisislens {

namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

// Extended pictographic codepoints, condensed to ranges.
constexpr std::array<Range, 28> kEmojiBase = {{
    {0x203C, 0x203C}, {0x2049, 0x2049}, {0x2122, 0x2122}, {0x2139, 0x2139},
    {0x2194, 0x2199}, {0x21A9, 0x21AA}, {0x231A, 0x231B}, {0x2328, 0x2328},
    {0x23CF, 0x23CF}, {0x23E9, 0x23F3}, {0x23F8, 0x23FA}, {0x24C2, 0x24C2},
    {0x25AA, 0x25AB}, {0x25B6, 0x25B6}, {0x25C0, 0x25C0}, {0x25FB, 0x25FE},
    {0x2600, 0x27BF}, {0x2934, 0x2935}, {0x2B05, 0x2B07}, {0x2B1B, 0x2B1C},
    {0x2B50, 0x2B50}, {0x2B55, 0x2B55}, {0x3030, 0x3030}, {0x303D, 0x303D},
    {0x3297, 0x3297}, {0x3299, 0x3299}, {0x1F000, 0x1FAFF}, {0x1FC00, 0x1FFFD},
}};

constexpr char32_t kZwj = 0x200D;
constexpr char32_t kKeycap = 0x20E3;

bool in_ranges(char32_t cp, std::span<const Range> ranges) {
  return std::any_of(ranges.begin(), ranges.end(),
                     [cp](const Range& r) { return cp >= r.lo && cp <= r.hi; });
}

bool is_regional_indicator(char32_t cp) { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }
bool is_skin_modifier(char32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }
bool is_keycap_base(char32_t cp) { return (cp >= '0' && cp <= '9') || cp == '#' || cp == '*'; }

}  // namespace

Utf8Char decode_utf8(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (pos + len > s.size()) return {0xFFFD, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong forms and surrogates are rejected.
  static constexpr std::array<char32_t, 5> kMin = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {0xFFFD, 1};
  return {cp, len};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  const auto b = std::find_if(s.begin(), s.end(), not_space);
  const auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return b < e ? std::string(b, e) : std::string();
}

bool is_space_codepoint(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_emoji_base(char32_t cp) { return in_ranges(cp, kEmojiBase); }

bool is_emoji_component(char32_t cp) {
  return cp == 0xFE0E || cp == 0xFE0F || cp == kKeycap || is_skin_modifier(cp) ||
         (cp >= 0xE0020 && cp <= 0xE007F);
}

bool is_word_codepoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9') ||
           cp == '_';
  }
  if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE00 && cp <= 0xFE0F) return false;
  if (cp >= 0xFFF0 && cp <= 0xFFFF) return false;
  if (cp >= 0xE0000) return false;
  if (is_space_codepoint(cp) || is_emoji_base(cp) || is_emoji_component(cp) || cp == kZwj) {
    return false;
  }
  return true;
}

bool is_word_at(std::string_view s, std::size_t pos) {
  return pos < s.size() && is_word_codepoint(decode_utf8(s, pos).cp);
}

bool is_word_before(std::string_view s, std::size_t pos) {
  if (pos == 0) return false;
  std::size_t start = pos - 1;
  // Step back over continuation bytes, at most three.
  while (start > 0 && pos - start < 4 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) {
    --start;
  }
  const Utf8Char c = decode_utf8(s, start);
  if (start + c.len != pos) return false;
  return is_word_codepoint(c.cp);
}

std::vector<std::string> word_runs(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  std::size_t run_start = std::string_view::npos;
  while (pos < s.size()) {
    const Utf8Char c = decode_utf8(s, pos);
    const bool word = is_word_codepoint(c.cp);
    if (word && run_start == std::string_view::npos) {
      run_start = pos;
    } else if (!word && run_start != std::string_view::npos) {
      out.push_back(ascii_lower(s.substr(run_start, pos - run_start)));
      run_start = std::string_view::npos;
    }
    pos += c.len;
  }
  if (run_start != std::string_view::npos) out.push_back(ascii_lower(s.substr(run_start)));
  return out;
}

std::size_t emoji_sequence_length(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  const Utf8Char first = decode_utf8(s, pos);

  if (is_keycap_base(first.cp)) {
    std::size_t p = pos + first.len;
    if (p < s.size()) {
      Utf8Char next = decode_utf8(s, p);
      if (next.cp == 0xFE0F) {
        p += next.len;
        if (p >= s.size()) return 0;
        next = decode_utf8(s, p);
      }
      if (next.cp == kKeycap) return p + next.len - pos;
    }
    return 0;
  }

  if (is_regional_indicator(first.cp)) {
    std::size_t p = pos + first.len;
    if (p < s.size()) {
      const Utf8Char second = decode_utf8(s, p);
      if (is_regional_indicator(second.cp)) return p + second.len - pos;
    }
    return first.len;
  }

  if (!is_emoji_base(first.cp)) return 0;

  std::size_t p = pos + first.len;
  while (p < s.size()) {
    const Utf8Char c = decode_utf8(s, p);
    if (is_emoji_component(c.cp)) {
      p += c.len;
      continue;
    }
    if (c.cp == kZwj) {
      const std::size_t after = p + c.len;
      if (after < s.size()) {
        const Utf8Char joined = decode_utf8(s, after);
        if (is_emoji_base(joined.cp)) {
          p = after + joined.len;
          continue;
        }
      }
      // A dangling joiner still belongs to the sequence.
      p = after;
      continue;
    }
    break;
  }
  return p - pos;
}

std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(delim, start);
    if (at == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, at - start));
    start = at + 1;
  }
}

}  // namespace crisislens
