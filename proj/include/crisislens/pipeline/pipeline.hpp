#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crisislens/common/errors.hpp"
#include "crisislens/pipeline/config.hpp"

namespace crisislens::pipeline {

// Stage outputs, in write order.
std::vector<std::string> stage_outputs(Stage s);

// Subcommand to stages; "all" expands to every stage in dependency order.
// Throws ConfigError for an unknown name.
std::vector<Stage> stages_for(std::string_view subcommand);

// A stage failed for a reason other than configuration or missing inputs.
class StageFailure : public Error {
 public:
  StageFailure(Stage stage, const std::string& what);
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

// Validates the configuration for every stage first, then runs the stages in
// order. Each output is written atomically; after each stage the manifest
// (default <out>/manifest.json) is rewritten with the config hash, input and
// output digests and row counts, and <out>/timings.json gets the wall time.
// Throws ConfigError, StageInputMissing, StageFailure.
void run_stages(std::span<const Stage> stages, const PipelineConfig& config,
                const std::filesystem::path& manifest_path = {});

// Process exit code for an exception escaping run_stages: ConfigError 2,
// StageInputMissing 3, anything else 1.
int exit_code_for(const std::exception& e);

}  // namespace crisislens::pipeline
