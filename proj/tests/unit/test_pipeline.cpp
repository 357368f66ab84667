#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/pipeline/config.hpp"
#include "crisislens/pipeline/pipeline.hpp"
#include "support.hpp"

using namespace crisislens;
using namespace crisislens::pipeline;
namespace fs = std::filesystem;

namespace {

ConfigValues fixture_values(const fs::path& out) {
  const fs::path data = CRISISLENS_TEST_DATA;
  return {{"input", (data / "corpus_500.jsonl").string()},
          {"start", "2020-03-01"},
          {"end", "2020-08-31"},
          {"cases", (data / "cases.csv").string()},
          {"deaths", (data / "deaths.csv").string()},
          {"max-lag", "14"},
          {"out", out.string()}};
}

PipelineConfig fixture_config(const fs::path& out, unsigned workers = 1) {
  auto v = fixture_values(out);
  v["workers"] = std::to_string(workers);
  return PipelineConfig::from_values(v);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("cd '") + CRISISLENS_SOURCE_DIR + "' && '" + CRISISLENS_CLI + "' " +
                          args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto v = parse_config_text("[causality]\nalpha = 0.01\n[run]\nworkers=3\n");
  CHECK(v.at("alpha") == "0.01");
  const auto c = PipelineConfig::from_values(v);
  CHECK(c.alpha == 0.01);
  CHECK(c.workers == 3);
  CHECK(c.max_lag == 90);
  CHECK_THROWS_AS(parse_config_text("[causality]\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[run]\nalpha = 0.01\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("alpha = 0.01\n"), ConfigError);
  CHECK_THROWS_AS(PipelineConfig::from_values({{"max-lag", "ten"}}), ConfigError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/x.ini"), ConfigError);
}

TEST_CASE("bundled fixture config parses") {
  const auto v = read_config_file(fs::path(CRISISLENS_SOURCE_DIR) / "config" / "fixture.ini");
  const auto c = PipelineConfig::from_values(v);
  CHECK(c.max_lag == 14);
  CHECK(c.window.start == parse_date("2020-03-01"));
}

TEST_CASE("validation") {
  const auto dir = testsupport::scratch_dir("validate");
  auto v = fixture_values(dir);
  const auto all = stages_for("all");
  PipelineConfig::from_values(v).validate(all);
  v["alpha"] = "1.5";
  CHECK_THROWS_AS(PipelineConfig::from_values(v).validate(all), ConfigError);
  v["alpha"] = "0.05";
  v["max-lag"] = "0";
  CHECK_THROWS_AS(PipelineConfig::from_values(v).validate(all), ConfigError);
  v["max-lag"] = "14";
  v["end"] = "2020-02-01";
  CHECK_THROWS_AS(PipelineConfig::from_values(v).validate(all), ConfigError);
  v["end"] = "2020-08-31";
  v["classifier"] = "external";
  CHECK_THROWS_AS(PipelineConfig::from_values(v).validate(all), ConfigError);
  v["provider"] = "localhost:9";
  PipelineConfig::from_values(v).validate(all);
  v["input"] = "/nonexistent.jsonl";
  CHECK_THROWS_AS(PipelineConfig::from_values(v).validate(all), ConfigError);
}

TEST_CASE("config hash ignores run-local keys") {
  auto a = fixture_config("/tmp/a", 1);
  auto b = fixture_config("/tmp/b", 8);
  CHECK(a.hash() == b.hash());
  b.alpha = 0.01;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("stage selection") {
  CHECK(stages_for("all").size() == 5);
  CHECK(stages_for("topics") == std::vector<Stage>{Stage::topics});
  CHECK_THROWS_AS(stages_for("plot"), ConfigError);
}

TEST_CASE("causality without topic outputs is a missing input") {
  const auto dir = testsupport::scratch_dir("missing");
  const auto stages = stages_for("causality");
  try {
    run_stages(stages, fixture_config(dir));
    FAIL("expected StageInputMissing");
  } catch (const StageInputMissing& e) {
    CHECK(exit_code_for(e) == 3);
  }
  CHECK(exit_code_for(ConfigError("x")) == 2);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("full run on the fixture") {
  const auto dir = testsupport::scratch_dir("full");
  run_stages(stages_for("all"), fixture_config(dir));
  for (const Stage s : stages_for("all")) {
    for (const auto& name : stage_outputs(s)) CHECK(fs::is_regular_file(dir / name));
  }
  const auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  CHECK(manifest.at("stages").size() == 5);
  CHECK(manifest.at("config_hash") == fixture_config(dir).hash());
  const auto& ingest = manifest.at("stages").at("ingest");
  CHECK(ingest.at("counts").at("malformed") == 3);
  CHECK(ingest.at("counts").at("duplicate") == 8);
  CHECK(ingest.at("outputs").at("records.jsonl").at("sha256") == sha256_file(dir / "records.jsonl"));

  // Topics recovered from the themed fixture.
  const auto topics = parse_csv(read_file(dir / "topics.csv"));
  CHECK(topics.size() >= 4);

  // Counts conserve across the sentiment outputs.
  const auto labels = parse_csv(read_file(dir / "labels.csv"));
  const auto records = read_lines(dir / "records.jsonl");
  CHECK(labels.size() == records.size() + 1);

  // The deaths target is driven by cases in the fixture generator.
  const auto deaths = parse_csv(read_file(dir / "granger_deaths.csv"));
  bool found = false;
  for (const auto& row : deaths) found |= !row.empty() && row[0] == "cases";
  CHECK(found);

  // Re-running one stage leaves the other stage entries intact.
  run_stages(stages_for("sentiment"), fixture_config(dir));
  CHECK(nlohmann::json::parse(read_file(dir / "manifest.json")).at("stages").size() == 5);
}

TEST_CASE("outputs do not depend on worker count") {
  const auto a = testsupport::scratch_dir("w1"), b = testsupport::scratch_dir("w4");
  run_stages(stages_for("all"), fixture_config(a, 1));
  run_stages(stages_for("all"), fixture_config(b, 4));
  CHECK(read_file(a / "manifest.json") == read_file(b / "manifest.json"));
  for (const Stage s : stages_for("all")) {
    for (const auto& name : stage_outputs(s)) {
      CAPTURE(name);
      CHECK(read_file(a / name) == read_file(b / name));
    }
  }
}

TEST_CASE("command-line exit codes") {
  const auto dir = testsupport::scratch_dir("cli");
  const std::string base = "--config config/fixture.ini --out '" + dir.string() + "' ";
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli(base + "--alpha 1.5 all") == 2);
  CHECK(run_cli(base + "--no-such-flag all") == 2);
  CHECK(run_cli(base) == 2);
  CHECK(run_cli(base + "causality") == 3);
  CHECK(run_cli(base + "ingest") == 0);
  CHECK(fs::is_regular_file(dir / "records.jsonl"));
}
