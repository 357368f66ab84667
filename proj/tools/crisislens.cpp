// Command-line driver for the crisislens pipeline.
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "crisislens/pipeline/config.hpp"
#include "crisislens/pipeline/pipeline.hpp"

namespace pl = crisislens::pipeline;

int main(int argc, char** argv) {
  CLI::App app{"crisislens: geotagged crisis-tweet analytics pipeline"};
  app.set_version_flag("--version", std::string(CRISISLENS_VERSION));
  app.fallthrough();

  std::string config_path;
  std::string manifest_path;
  std::string log_level = "info";
  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--manifest", manifest_path, "where to write the manifest (default <out>/manifest.json)");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  // Every configuration key doubles as a flag of the same name.
  std::map<std::string, std::string> flags;
  for (const auto& key : pl::config_keys()) {
    const std::string name(key.name);
    std::string help = fmt::format("[{}] {}", key.section, key.help);
    if (!key.default_value.empty()) help += fmt::format(" (default: '{}')", key.default_value);
    app.add_option("--" + name, flags[name], help);
  }

  std::string subcommand;
  for (const char* name : {"ingest", "graph", "topics", "sentiment", "causality", "all"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "all" ? "run every stage in order"
                                                                     : fmt::format("run the {} stage", name));
    sub->callback([&subcommand, name] { subcommand = name; });
  }
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto logger = spdlog::stderr_color_mt("crisislens");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    pl::ConfigValues values;
    if (!config_path.empty()) values = pl::read_config_file(config_path);
    for (const auto& [name, value] : flags) {
      if (app.count("--" + name) > 0) values[name] = value;
    }
    const auto config = pl::PipelineConfig::from_values(values);
    pl::run_stages(pl::stages_for(subcommand), config, manifest_path);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return pl::exit_code_for(e);
  }
  return 0;
}
