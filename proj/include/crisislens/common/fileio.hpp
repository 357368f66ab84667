#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace crisislens {

// Whole-file read. Throws IoError.
std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Writes to "<path>.tmp" then renames over `path`, so readers never observe a
// half-written artifact. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// 64-bit FNV-1a over `bytes`, starting from a seeded offset basis.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0);

// RFC 4180 style CSV: fields containing ',', '"', CR or LF are quoted.
std::string csv_escape(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);
std::vector<std::string> parse_csv_row(std::string_view line);
// Splits a CSV document into rows, honouring quoted newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace crisislens
