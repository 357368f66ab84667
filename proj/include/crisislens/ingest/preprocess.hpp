#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace crisislens::ingest {

inline constexpr std::string_view kUrlToken = "<HTTPURL>";
inline constexpr std::string_view kEmojiToken = "<EMOJI>";

// Tweet normalisation: HTML entities decoded (to a fixpoint, so doubly
// escaped text settles), URLs replaced by <HTTPURL>, emoji sequences by
// <EMOJI>, whitespace runs collapsed to one space, ends trimmed.
// preprocess(preprocess(t)) == preprocess(t).
std::string preprocess(std::string_view text);

std::string decode_html_entities(std::string_view text);
std::string replace_urls(std::string_view text);
std::string replace_emoji(std::string_view text);
std::string collapse_whitespace(std::string_view text);

// Replaces each <HTTPURL> / <EMOJI> placeholder with a single space.
std::string strip_placeholders(std::string_view text);

// A URL starts with "http://", "https://" or "www." at a position not preceded
// by an ASCII alphanumeric, and extends over the maximal non-whitespace run.
// Returns the byte offset of the first URL at or after `from`, or npos.
std::size_t find_url(std::string_view text, std::size_t from = 0);

}  // namespace crisislens::ingest
