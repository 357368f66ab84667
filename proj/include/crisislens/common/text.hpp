#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace crisislens {

struct Utf8Char {
  char32_t cp = 0;
  std::size_t len = 1;  // bytes consumed, >= 1 even for invalid input
};

// Decodes one codepoint at `pos`. Invalid or truncated sequences decode to
// U+FFFD with len 1 so callers always make progress.
Utf8Char decode_utf8(std::string_view s, std::size_t pos);
void append_utf8(std::string& out, char32_t cp);

std::string ascii_lower(std::string_view s);
std::string trim(std::string_view s);

bool is_space_codepoint(char32_t cp);
bool is_emoji_base(char32_t cp);
bool is_emoji_component(char32_t cp);

// \w for tweet text: ASCII alphanumerics, '_' and letters outside the
// punctuation, symbol and emoji blocks.
bool is_word_codepoint(char32_t cp);

// True when the byte at `pos` starts a word codepoint.
bool is_word_at(std::string_view s, std::size_t pos);
// True when the codepoint that ends right before `pos` is a word codepoint.
bool is_word_before(std::string_view s, std::size_t pos);

// Maximal \w+ runs, ASCII-lowercased, in order of appearance.
std::vector<std::string> word_runs(std::string_view s);

// Length in bytes of the emoji sequence starting at `pos`, or 0. A ZWJ
// sequence, a modifier sequence, a keycap or a flag pair counts as one.
std::size_t emoji_sequence_length(std::string_view s, std::size_t pos);

std::vector<std::string> split(std::string_view s, char delim);

}  // namespace crisislens
