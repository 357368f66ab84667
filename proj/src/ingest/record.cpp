#include "crisislens/ingest/record.hpp"

#include <charconv>
#include <fmt/format.h>
#include <json.hpp>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/common/text.hpp"
#include "crisislens/ingest/preprocess.hpp"

namespace crisislens::ingest {

namespace {

using nlohmann::json;

const json* lookup(const json& root, std::string_view path) {
  const json* node = &root;
  for (const auto& part : split(path, '.')) {
    if (!node->is_object()) return nullptr;
    const auto it = node->find(part);
    if (it == node->end()) return nullptr;
    node = &*it;
  }
  return node->is_null() ? nullptr : node;
}

std::uint64_t to_u64(const json& v, std::string_view field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return out;
  }
  throw MalformedRecord(fmt::format("field '{}' is not an unsigned 64-bit id", field));
}

std::string to_string_field(const json& v, std::string_view field) {
  if (!v.is_string()) throw MalformedRecord(fmt::format("field '{}' is not a string", field));
  return v.get<std::string>();
}

// Strips a leading sigil and lowercases; empty when the token is unusable.
std::string normalise_tag(std::string_view raw) {
  std::string s = trim(raw);
  if (!s.empty() && (s.front() == '#' || s.front() == '@')) s.erase(0, 1);
  for (const char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return {};
  }
  return ascii_lower(s);
}

std::vector<std::string> tags_from_entities(const json& node, std::string_view field) {
  std::vector<std::string> out;
  auto push = [&out](std::string_view raw) {
    std::string t = normalise_tag(raw);
    if (!t.empty()) out.push_back(std::move(t));
  };
  if (node.is_string()) {
    // Flat dumps may carry tags as one whitespace- or comma-separated string.
    std::string token;
    for (const char c : node.get_ref<const std::string&>()) {
      if (c == ' ' || c == ',' || c == '\t') {
        push(token);
        token.clear();
      } else {
        token += c;
      }
    }
    push(token);
    return out;
  }
  if (!node.is_array()) {
    throw MalformedRecord(fmt::format("field '{}' is neither an array nor a string", field));
  }
  for (const auto& item : node) {
    if (item.is_string()) {
      push(item.get_ref<const std::string&>());
      continue;
    }
    if (item.is_object()) {
      bool found = false;
      for (const char* key : {"tag", "text", "username", "screen_name"}) {
        const auto it = item.find(key);
        if (it != item.end() && it->is_string()) {
          push(it->get_ref<const std::string&>());
          found = true;
          break;
        }
      }
      if (found) continue;
    }
    throw MalformedRecord(fmt::format("unrecognised entity item in '{}'", field));
  }
  return out;
}

std::vector<std::string> extract_sigil(std::string_view text, char sigil) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = text.find(sigil, pos)) != std::string_view::npos) {
    if (is_word_before(text, pos)) {
      ++pos;
      continue;
    }
    std::size_t end = pos + 1;
    while (end < text.size()) {
      const Utf8Char c = decode_utf8(text, end);
      if (!is_word_codepoint(c.cp)) break;
      end += c.len;
    }
    if (end > pos + 1) out.push_back(ascii_lower(text.substr(pos + 1, end - pos - 1)));
    pos = end;
  }
  return out;
}

RecordSchema schema_from_file(const std::filesystem::path& path) {
  RecordSchema schema = RecordSchema::archival();
  for (const auto& raw : read_lines(path)) {
    const std::string line = trim(raw);
    if (line.empty() || line.front() == ';') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("schema file '{}': expected key=value, got '{}'",
                                    path.string(), line));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::string* slot = nullptr;
    if (key == "id") slot = &schema.id;
    else if (key == "created_at") slot = &schema.created_at;
    else if (key == "text") slot = &schema.text;
    else if (key == "geo_full_name") slot = &schema.geo_full_name;
    else if (key == "geo_country") slot = &schema.geo_country;
    else if (key == "source") slot = &schema.source;
    else if (key == "author_id") slot = &schema.author_id;
    else if (key == "hashtags") slot = &schema.hashtags;
    else if (key == "mentions") slot = &schema.mentions;
    if (slot == nullptr) {
      throw ConfigError(fmt::format("schema file '{}': unknown field '{}'", path.string(), key));
    }
    *slot = value;
  }
  return schema;
}

}  // namespace

RecordSchema RecordSchema::archival() { return RecordSchema{}; }

RecordSchema RecordSchema::flat() {
  RecordSchema s;
  s.geo_full_name = "place";
  s.geo_country = "country";
  s.hashtags = "hashtags";
  s.mentions = "mentions";
  return s;
}

RecordSchema RecordSchema::resolve(std::string_view name_or_path) {
  if (name_or_path.empty() || name_or_path == "archival") return archival();
  if (name_or_path == "flat") return flat();
  return schema_from_file(std::filesystem::path(name_or_path));
}

std::vector<std::string> extract_hashtags(std::string_view text) { return extract_sigil(text, '#'); }
std::vector<std::string> extract_mentions(std::string_view text) { return extract_sigil(text, '@'); }

TweetRecord parse_record(std::string_view line, const RecordSchema& schema) {
  json root;
  try {
    root = json::parse(line);
  } catch (const json::exception& e) {
    throw MalformedRecord(fmt::format("unparseable line: {}", e.what()));
  }
  if (!root.is_object()) throw MalformedRecord("record is not a JSON object");

  auto required = [&](const std::string& path) -> const json& {
    const json* v = lookup(root, path);
    if (v == nullptr) throw MissingField(fmt::format("required field '{}' is absent", path));
    return *v;
  };
  auto optional_string = [&](const std::string& path) -> std::string {
    const json* v = lookup(root, path);
    return v == nullptr ? std::string() : to_string_field(*v, path);
  };

  TweetRecord rec;
  rec.id = to_u64(required(schema.id), schema.id);
  const std::string created = to_string_field(required(schema.created_at), schema.created_at);
  try {
    rec.created_at = parse_timestamp(created);
  } catch (const std::invalid_argument& e) {
    throw MalformedRecord(fmt::format("bad created_at: {}", e.what()));
  }
  rec.text = to_string_field(required(schema.text), schema.text);
  rec.geo_full_name = optional_string(schema.geo_full_name);
  rec.geo_country = optional_string(schema.geo_country);
  rec.source = optional_string(schema.source);
  if (const json* a = lookup(root, schema.author_id)) rec.author_id = to_u64(*a, schema.author_id);

  const json* h = lookup(root, schema.hashtags);
  rec.hashtags = h ? tags_from_entities(*h, schema.hashtags) : extract_hashtags(rec.text);
  const json* m = lookup(root, schema.mentions);
  rec.mentions = m ? tags_from_entities(*m, schema.mentions) : extract_mentions(rec.text);

  if (const auto it = root.find("clean_text"); it != root.end() && it->is_string()) {
    rec.clean_text = it->get<std::string>();
  } else {
    rec.clean_text = preprocess(rec.text);
  }
  return rec;
}

std::string to_canonical_json(const TweetRecord& r) {
  json j = json::object();
  j["id"] = std::to_string(r.id);
  j["created_at"] = format_timestamp(r.created_at);
  j["text"] = r.text;
  j["clean_text"] = r.clean_text;
  j["place"] = r.geo_full_name;
  j["country"] = r.geo_country;
  j["source"] = r.source;
  j["author_id"] = std::to_string(r.author_id);
  j["hashtags"] = r.hashtags;
  j["mentions"] = r.mentions;
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::vector<TweetRecord> read_canonical_records(const std::filesystem::path& path) {
  const RecordSchema schema = RecordSchema::flat();
  std::vector<TweetRecord> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse_record(line, schema));
    } catch (const Error& e) {
      throw MalformedFile(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  return out;
}

}  // namespace crisislens::ingest
