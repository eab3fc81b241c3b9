// Copyright 2026 The mirrorbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorbench/analysis.hpp"
#include "mirrorbench/circuit_json.hpp"
#include "mirrorbench/error_model.hpp"
#include "mirrorbench/generators.hpp"

namespace mirrorbench {

/// Invalid or inconsistent campaign configuration; raised before any work.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Stage { kGenerate, kCompile, kMirror, kSimulate, kAnalyze, kReport };

const char* stage_name(Stage s);
Stage stage_from_name(const std::string& name);
const std::vector<Stage>& all_stages();

/// A pipeline stage failed. what() starts with "[<stage>]".
class StageError : public std::runtime_error {
 public:
  StageError(Stage stage, const std::string& message);
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

struct CampaignConfig {
  std::string family = "qv";
  std::vector<CircuitShape> shapes;
  int circuits_per_shape = 1;
  int k1 = 10;
  int k2 = 10;
  int k3 = 10;
  std::uint64_t shots = 1000;
  ErrorModel error_model;
  /// Device preset sized to each shape's width: heavyhex, grid, line, complete.
  std::string graph = "complete";
  std::uint64_t seed = 1;
  bool permutation_trick = true;
  bool dynamical_decoupling = false;
  bool neel_prelude = false;
  int bootstrap_resamples = 1000;
  double confidence = 0.95;
  /// Shapes with n at most this also get exact_polarization of every compiled
  /// circuit (density-matrix cost grows as 16^n). 0 disables.
  int oracle_max_n = 0;
  /// When set, compilation goes through external_preprocess with this command.
  std::string external_command;
  int external_timeout_ms = 30000;
  int column_fit_min_n = 7;
  bool column_fit_depth_one = true;

  std::filesystem::path output_dir = "campaign";
  /// Worker threads; does not affect any output.
  int jobs = 1;
};

/// Parses a config document. Relative paths ("error_model_file") resolve
/// against base_dir. Throws ConfigError.
CampaignConfig config_from_json(const json& j, const std::filesystem::path& base_dir = ".");
CampaignConfig load_config(const std::filesystem::path& path);
/// Canonical form with the error model inlined; output_dir and jobs omitted.
json config_to_json(const CampaignConfig& cfg);
/// Hex FNV-1a of config_to_json.
std::string config_hash(const CampaignConfig& cfg);

/// Runs one stage against cfg.output_dir. Throws StageError when the bundle
/// lacks the upstream artifacts or the stage itself fails.
void run_stage(const CampaignConfig& cfg, Stage stage);

/// Writes config.json and runs every stage. Returns the results document.
json run_campaign(const CampaignConfig& cfg);

/// Reloads config.json from an existing bundle and reruns `from` and every
/// later stage. Upstream artifacts are read, never rewritten.
json replay(const std::filesystem::path& dir, Stage from, int jobs = 1);

}  // namespace mirrorbench
