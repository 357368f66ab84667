#include "crisislens/pipeline/config.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/common/text.hpp"
#include "crisislens/provider/client.hpp"

namespace crisislens::pipeline {

namespace {

constexpr std::array<KeySpec, 26> kKeys{{
    {"ingest", "input", "", "record dump(s), comma-separated"},
    {"ingest", "schema", "archival", "archival, flat, or a field-mapping file"},
    {"ingest", "start", "2020-01-01", "first day of the window (UTC)"},
    {"ingest", "end", "2022-10-09", "last day of the window (UTC)"},
    {"ingest", "terms", "", "tracking-term file (default: bundled list)"},
    {"ingest", "country", "Australia", "required geo country; empty disables"},
    {"ingest", "tz-offset-minutes", "0", "offset applied before taking calendar dates"},
    {"geo", "gazetteer", "", "place<TAB>state file (default: bundled)"},
    {"topics", "embedding", "default", "default or external"},
    {"topics", "dim", "256", "hashed embedding dimension"},
    {"topics", "reduce-dim", "5", "PCA target dimension; 0 disables"},
    {"topics", "min-cluster-size", "10", "smallest topic"},
    {"topics", "min-samples", "0", "core-distance neighbours; 0 = min-cluster-size"},
    {"topics", "top-k", "10", "keywords per topic"},
    {"sentiment", "classifier", "lexicon", "lexicon or external"},
    {"sentiment", "lexicon", "", "term,polarity file (default: bundled)"},
    {"sentiment", "threshold", "0.1", "lexicon score threshold"},
    {"causality", "cases", "", "daily confirmed cases (date,value)"},
    {"causality", "deaths", "", "daily deaths (date,value)"},
    {"causality", "max-lag", "90", "largest Granger lag"},
    {"causality", "alpha", "0.05", "significance level"},
    {"causality", "difference", "0", "difference every series this many times"},
    {"run", "provider", "", "provider host:port for external modes"},
    {"run", "out", "out", "output directory"},
    {"run", "workers", "1", "worker threads"},
    {"run", "seed", "24301", "embedding hash seed"},
}};

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

template <typename T>
T parse_number(const ConfigValues& v, std::string_view key) {
  const std::string s = trim(v.find(key)->second);
  T out{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not a valid number", key, s));
  }
  return out;
}

std::optional<std::filesystem::path> optional_path(const ConfigValues& v, std::string_view key) {
  const std::string s = trim(v.find(key)->second);
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

std::string format_double(double d) { return fmt::format("{}", d); }

}  // namespace

std::span<const KeySpec> config_keys() { return kKeys; }

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::ingest: return "ingest";
    case Stage::graph: return "graph";
    case Stage::topics: return "topics";
    case Stage::sentiment: return "sentiment";
    case Stage::causality: return "causality";
  }
  return "?";
}

ConfigValues parse_config_text(std::string_view text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  ConfigValues out;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(fmt::format("config: key '{}' must sit inside a section", section));
    }
    for (const auto& [key, value] : body) {
      const KeySpec* spec = find_key(key);
      if (spec == nullptr) throw ConfigError(fmt::format("config: unknown key '{}'", key));
      if (spec->section != section) {
        throw ConfigError(
            fmt::format("config: key '{}' belongs in [{}], not [{}]", key, spec->section, section));
      }
      out[key] = value.get_value<std::string>();
    }
  }
  return out;
}

ConfigValues read_config_file(const std::filesystem::path& path) {
  try {
    return parse_config_text(read_file(path));
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
}

PipelineConfig PipelineConfig::from_values(const ConfigValues& given) {
  ConfigValues v;
  for (const auto& k : kKeys) v.emplace(std::string(k.name), std::string(k.default_value));
  for (const auto& [key, value] : given) {
    if (find_key(key) == nullptr) throw ConfigError(fmt::format("config: unknown key '{}'", key));
    v[key] = value;
  }

  PipelineConfig c;
  for (const auto& part : split(v.at("input"), ',')) {
    const std::string p = trim(part);
    if (!p.empty()) c.inputs.emplace_back(p);
  }
  c.schema = trim(v.at("schema"));
  try {
    c.window.start = parse_date(trim(v.at("start")));
    c.window.end = parse_date(trim(v.at("end")));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("config: bad date: {}", e.what()));
  }
  c.terms_file = optional_path(v, "terms");
  if (const std::string country = trim(v.at("country")); !country.empty()) c.country = country;
  c.tz_offset = std::chrono::minutes(parse_number<long>(v, "tz-offset-minutes"));
  c.gazetteer_file = optional_path(v, "gazetteer");

  c.embedding = trim(v.at("embedding"));
  c.dim = parse_number<std::size_t>(v, "dim");
  c.reduce_dim = parse_number<std::size_t>(v, "reduce-dim");
  c.min_cluster_size = parse_number<std::size_t>(v, "min-cluster-size");
  c.min_samples = parse_number<std::size_t>(v, "min-samples");
  c.top_k = parse_number<std::size_t>(v, "top-k");

  c.classifier = trim(v.at("classifier"));
  c.lexicon_file = optional_path(v, "lexicon");
  c.threshold = parse_number<double>(v, "threshold");

  c.cases_file = optional_path(v, "cases");
  c.deaths_file = optional_path(v, "deaths");
  c.max_lag = parse_number<std::size_t>(v, "max-lag");
  c.alpha = parse_number<double>(v, "alpha");
  c.difference = parse_number<std::size_t>(v, "difference");

  if (const std::string p = trim(v.at("provider")); !p.empty()) c.provider = p;
  c.out = trim(v.at("out"));
  c.workers = parse_number<unsigned>(v, "workers");
  c.seed = parse_number<std::uint64_t>(v, "seed");
  return c;
}

void PipelineConfig::validate(std::span<const Stage> stages) const {
  auto need = [](bool ok, std::string message) {
    if (!ok) throw ConfigError(std::move(message));
  };
  auto exists = [&need](const std::optional<std::filesystem::path>& p, std::string_view key) {
    if (p) need(std::filesystem::is_regular_file(*p), fmt::format("{}: file '{}' not found", key, p->string()));
  };
  need(alpha > 0.0 && alpha < 1.0, fmt::format("alpha must lie in (0, 1), got {}", alpha));
  need(max_lag >= 1, "max-lag must be at least 1");
  need(window.valid(), "end precedes start");
  need(workers >= 1, "workers must be at least 1");
  need(dim >= 1, "dim must be positive");
  need(min_cluster_size >= 1, "min-cluster-size must be positive");
  need(top_k >= 1, "top-k must be positive");
  need(threshold >= 0.0 && threshold < 1.0, "threshold must lie in [0, 1)");
  need(embedding == "default" || embedding == "external", "embedding must be default or external");
  need(classifier == "lexicon" || classifier == "external", "classifier must be lexicon or external");
  need(reduce_dim == 0 || embedding == "external" || reduce_dim < dim,
       fmt::format("reduce-dim {} must be below dim {}", reduce_dim, dim));
  need(!out.empty(), "out must not be empty");
  if (provider) provider::ProviderClient::parse_endpoint(*provider);
  exists(terms_file, "terms");
  exists(gazetteer_file, "gazetteer");
  exists(lexicon_file, "lexicon");
  exists(cases_file, "cases");
  exists(deaths_file, "deaths");

  for (const Stage s : stages) {
    switch (s) {
      case Stage::ingest:
        need(!inputs.empty(), "ingest needs at least one input");
        for (const auto& p : inputs) {
          need(std::filesystem::is_regular_file(p), fmt::format("input: file '{}' not found", p.string()));
        }
        need(schema == "archival" || schema == "flat" || std::filesystem::is_regular_file(schema),
             fmt::format("schema '{}' is neither a layout name nor a file", schema));
        break;
      case Stage::topics:
        need(embedding != "external" || provider.has_value(), "embedding=external needs provider");
        break;
      case Stage::sentiment:
        need(classifier != "external" || provider.has_value(), "classifier=external needs provider");
        break;
      case Stage::causality:
        need(cases_file.has_value(), "causality needs cases");
        need(deaths_file.has_value(), "causality needs deaths");
        break;
      case Stage::graph:
        break;
    }
  }
}

ConfigValues PipelineConfig::canonical() const {
  auto opt = [](const auto& o) -> std::string {
    if (!o) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*o)>, std::filesystem::path>) {
      return o->generic_string();
    } else {
      return *o;
    }
  };
  std::string joined;
  for (const auto& p : inputs) {
    if (!joined.empty()) joined += ',';
    joined += p.generic_string();
  }
  return {
      {"input", joined},
      {"schema", schema},
      {"start", format_date(window.start)},
      {"end", format_date(window.end)},
      {"terms", opt(terms_file)},
      {"country", opt(country)},
      {"tz-offset-minutes", std::to_string(tz_offset.count())},
      {"gazetteer", opt(gazetteer_file)},
      {"embedding", embedding},
      {"dim", std::to_string(dim)},
      {"reduce-dim", std::to_string(reduce_dim)},
      {"min-cluster-size", std::to_string(min_cluster_size)},
      {"min-samples", std::to_string(min_samples)},
      {"top-k", std::to_string(top_k)},
      {"classifier", classifier},
      {"lexicon", opt(lexicon_file)},
      {"threshold", format_double(threshold)},
      {"cases", opt(cases_file)},
      {"deaths", opt(deaths_file)},
      {"max-lag", std::to_string(max_lag)},
      {"alpha", format_double(alpha)},
      {"difference", std::to_string(difference)},
      {"provider", opt(provider)},
      {"seed", std::to_string(seed)},
  };
}

std::string PipelineConfig::hash() const {
  std::string text;
  for (const auto& [k, v] : canonical()) text += fmt::format("{}={}\n", k, v);
  return sha256_hex(text);
}

}  // namespace crisislens::pipeline
