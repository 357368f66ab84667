#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crisislens/common/dates.hpp"

namespace crisislens::pipeline {

// One configuration key. The same name is used in the INI file (inside
// `section`) and as a command-line flag (--name).
struct KeySpec {
  std::string_view section;
  std::string_view name;
  std::string_view default_value;
  std::string_view help;
};

std::span<const KeySpec> config_keys();

using ConfigValues = std::map<std::string, std::string, std::less<>>;

// Sectioned INI file. Unknown keys, keys in the wrong section and duplicates
// are ConfigError.
ConfigValues read_config_file(const std::filesystem::path& path);
ConfigValues parse_config_text(std::string_view text);

enum class Stage { ingest, graph, topics, sentiment, causality };
std::string_view stage_name(Stage s);

struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  std::string schema = "archival";
  DateWindow window{};
  std::optional<std::filesystem::path> terms_file;
  std::optional<std::string> country;
  std::chrono::minutes tz_offset{0};
  std::optional<std::filesystem::path> gazetteer_file;

  std::string embedding = "default";  // default | external
  std::size_t dim = 256;
  std::size_t reduce_dim = 5;  // 0 keeps the full embedding
  std::size_t min_cluster_size = 10;
  std::size_t min_samples = 0;
  std::size_t top_k = 10;

  std::string classifier = "lexicon";  // lexicon | external
  std::optional<std::filesystem::path> lexicon_file;
  double threshold = 0.1;

  std::optional<std::filesystem::path> cases_file;
  std::optional<std::filesystem::path> deaths_file;
  std::size_t max_lag = 90;
  double alpha = 0.05;
  std::size_t difference = 0;

  std::optional<std::string> provider;  // host:port
  std::filesystem::path out = "out";
  unsigned workers = 1;
  std::uint64_t seed = 0x5eed;

  // Defaults overlaid by `values`. Throws ConfigError on unknown keys and
  // unparseable values.
  static PipelineConfig from_values(const ConfigValues& values);

  // Checks value ranges, file existence, and the keys `stages` need.
  // Throws ConfigError.
  void validate(std::span<const Stage> stages) const;

  // Effective key=value pairs, excluding run-local keys (workers, out) so
  // the hash does not depend on where or how fast a run happens.
  ConfigValues canonical() const;
  std::string hash() const;
};

}  // namespace crisislens::pipeline
