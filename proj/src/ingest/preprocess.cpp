#include "crisislens/ingest/preprocess.hpp"

#include <array>
#include <utility>

#include "crisislens/common/text.hpp"

namespace crisislens::ingest {

namespace {

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

constexpr std::array<NamedEntity, 30> kNamedEntities = {{
    {"amp", '&'},      {"lt", '<'},        {"gt", '>'},       {"quot", '"'},
    {"apos", '\''},    {"nbsp", 0xA0},     {"hellip", 0x2026}, {"mdash", 0x2014},
    {"ndash", 0x2013}, {"lsquo", 0x2018},  {"rsquo", 0x2019}, {"ldquo", 0x201C},
    {"rdquo", 0x201D}, {"copy", 0xA9},     {"reg", 0xAE},     {"trade", 0x2122},
    {"euro", 0x20AC},  {"pound", 0xA3},    {"cent", 0xA2},    {"yen", 0xA5},
    {"deg", 0xB0},     {"times", 0xD7},    {"divide", 0xF7},  {"laquo", 0xAB},
    {"raquo", 0xBB},   {"middot", 0xB7},   {"bull", 0x2022},  {"sect", 0xA7},
    {"para", 0xB6},    {"shy", 0xAD},
}};

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = text[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

// Decodes one entity at text[pos] == '&'. Returns the codepoint and the
// entity length, or {0, 0} when the text there is not a decodable entity.
std::pair<char32_t, std::size_t> decode_entity_at(std::string_view text, std::size_t pos) {
  const std::size_t semi = text.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 12) return {0, 0};
  const std::string_view body = text.substr(pos + 1, semi - pos - 1);
  if (body.empty()) return {0, 0};
  if (body[0] == '#') {
    char32_t cp = 0;
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::size_t first = hex ? 2 : 1;
    if (first >= body.size()) return {0, 0};
    for (std::size_t i = first; i < body.size(); ++i) {
      const char c = body[i];
      int digit;
      if (c >= '0' && c <= '9') {
        digit = c - '0';
      } else if (hex && c >= 'a' && c <= 'f') {
        digit = c - 'a' + 10;
      } else if (hex && c >= 'A' && c <= 'F') {
        digit = c - 'A' + 10;
      } else {
        return {0, 0};
      }
      cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(digit);
      if (cp > 0x10FFFF) return {0, 0};
    }
    if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) return {0, 0};
    return {cp, semi - pos + 1};
  }
  for (const auto& e : kNamedEntities) {
    if (e.name == body) return {e.cp, semi - pos + 1};
  }
  return {0, 0};
}

std::string decode_entities_once(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '&') {
      const auto [cp, len] = decode_entity_at(text, pos);
      if (len != 0) {
        append_utf8(out, cp);
        pos += len;
        continue;
      }
    }
    out += text[pos++];
  }
  return out;
}

bool url_starts_at(std::string_view text, std::size_t pos) {
  if (pos > 0 && is_ascii_alnum(text[pos - 1])) return false;
  return starts_with_ci(text, pos, "http://") || starts_with_ci(text, pos, "https://") ||
         starts_with_ci(text, pos, "www.");
}

// End of the non-whitespace run starting at `pos`, by codepoint.
std::size_t run_end(std::string_view text, std::size_t pos) {
  while (pos < text.size()) {
    const Utf8Char c = decode_utf8(text, pos);
    if (is_space_codepoint(c.cp)) break;
    pos += c.len;
  }
  return pos;
}

}  // namespace

std::string decode_html_entities(std::string_view text) {
  std::string current(text);
  // Every successful decode shortens the string, so this terminates.
  while (current.find('&') != std::string::npos) {
    std::string next = decode_entities_once(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

std::size_t find_url(std::string_view text, std::size_t from) {
  for (std::size_t pos = from; pos < text.size(); ++pos) {
    const char c = text[pos];
    if ((c == 'h' || c == 'H' || c == 'w' || c == 'W') && url_starts_at(text, pos)) return pos;
  }
  return std::string_view::npos;
}

std::string replace_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t at = find_url(text, pos);
    if (at == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, at - pos));
    out.append(kUrlToken);
    pos = run_end(text, at);
  }
  return out;
}

std::string replace_emoji(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t len = emoji_sequence_length(text, pos);
    if (len > 0) {
      out.append(kEmojiToken);
      pos += len;
      continue;
    }
    const Utf8Char c = decode_utf8(text, pos);
    out.append(text.substr(pos, c.len));
    pos += c.len;
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const Utf8Char c = is_ascii_space(text[pos]) ? Utf8Char{static_cast<char32_t>(text[pos]), 1}
                                                 : decode_utf8(text, pos);
    if (is_space_codepoint(c.cp)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out.append(text.substr(pos, c.len));
    }
    pos += c.len;
  }
  return out;
}

std::string preprocess(std::string_view text) {
  return collapse_whitespace(replace_emoji(replace_urls(decode_html_entities(text))));
}

std::string strip_placeholders(std::string_view text) {
  std::string out(text);
  for (const std::string_view token : {kUrlToken, kEmojiToken}) {
    std::size_t pos = 0;
    while ((pos = out.find(token, pos)) != std::string::npos) {
      out.replace(pos, token.size(), " ");
      pos += 1;
    }
  }
  return out;
}

}  // namespace crisislens::ingest
