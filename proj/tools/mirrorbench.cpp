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

// mirrorbench: command-line front end for benchmark campaigns.
//
// Every subcommand works on one campaign directory. Stage subcommands
// (generate, compile, mirror, simulate, analyze, report) run a single stage;
// run executes all of them and replay reruns a stage and everything after it.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mirrorbench/campaign.hpp"
#include "mirrorbench/circuit_json.hpp"

namespace fs = std::filesystem;
using mirrorbench::CampaignConfig;
using mirrorbench::ConfigError;
using mirrorbench::Stage;
using mirrorbench::StageError;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string out;
  std::string family;
  std::vector<std::string> shapes;
  std::optional<int> count;
  std::optional<int> k1, k2, k3;
  std::optional<std::uint64_t> shots;
  std::string error_model;
  std::string graph;
  bool dd = false;
  bool no_perm_trick = false;
  std::string external;
  std::string stage = "analyze";
};

mirrorbench::CircuitShape parse_shape(const std::string& text) {
  const auto x = text.find_first_of("x,");
  if (x == std::string::npos) throw ConfigError("shape must look like NxD: " + text);
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw ConfigError("shape must look like NxD: " + text);
  }
}

// --config wins, then an existing bundle's config.json, then plain flags.
CampaignConfig resolve_config(const Flags& f) {
  mirrorbench::json j;
  fs::path base = ".";
  if (!f.config.empty()) {
    if (!fs::exists(f.config)) throw ConfigError("config file not found: " + f.config);
    j = mirrorbench::read_json_file(f.config);
    base = fs::path(f.config).parent_path();
    if (base.empty()) base = ".";
  } else if (!f.out.empty() && fs::exists(fs::path(f.out) / "config.json")) {
    j = mirrorbench::read_json_file(fs::path(f.out) / "config.json");
  } else {
    j = mirrorbench::json::object();
  }
  if (!f.family.empty()) j["family"] = f.family;
  if (!f.shapes.empty()) {
    j["shapes"] = mirrorbench::json::array();
    for (const auto& s : f.shapes) {
      const auto shape = parse_shape(s);
      j["shapes"].push_back({shape.n, shape.d});
    }
  }
  if (f.count) j["circuits_per_shape"] = *f.count;
  if (f.k1 || f.k2 || f.k3) {
    auto k = j.value("k", std::vector<int>{10, 10, 10});
    if (k.size() != 3) throw ConfigError("'k' must list three counts");
    if (f.k1) k[0] = *f.k1;
    if (f.k2) k[1] = *f.k2;
    if (f.k3) k[2] = *f.k3;
    j["k"] = k;
  }
  if (f.shots) j["shots"] = *f.shots;
  if (!f.error_model.empty()) {
    j.erase("error_model");
    j["error_model_file"] = fs::absolute(f.error_model).string();
  }
  if (!f.graph.empty()) j["graph"] = f.graph;
  if (f.dd) j["dynamical_decoupling"] = true;
  if (f.no_perm_trick) j["permutation_trick"] = false;
  if (!f.external.empty()) j["external_command"] = f.external;
  if (f.seed) j["seed"] = *f.seed;
  CampaignConfig cfg = mirrorbench::config_from_json(j, base);
  if (!f.out.empty()) cfg.output_dir = f.out;
  cfg.jobs = f.jobs;
  return cfg;
}

void store_config(const CampaignConfig& cfg) {
  fs::create_directories(cfg.output_dir);
  auto stored = mirrorbench::config_to_json(cfg);
  stored["config_hash"] = mirrorbench::config_hash(cfg);
  mirrorbench::write_json_file(cfg.output_dir / "config.json", stored);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mirror-circuit full-stack benchmark toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "Campaign config JSON");
  app.add_option("--seed", f.seed, "Root seed (overrides the config)");
  app.add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", f.out, "Campaign directory (overrides output_dir)");
  app.add_option("--family", f.family, "Circuit family: qv, grid, line, hamsim");
  app.add_option("--shape", f.shapes, "Shape NxD; repeatable");
  app.add_option("--count", f.count, "Circuits per shape");
  app.add_option("--k1", f.k1, "Number of M1 mirror circuits");
  app.add_option("--k2", f.k2, "Number of M2 mirror circuits");
  app.add_option("--k3", f.k3, "Number of M3 mirror circuits");
  app.add_option("--shots", f.shots, "Shots per circuit");
  app.add_option("--error-model", f.error_model, "Error model JSON file");
  app.add_option("--graph", f.graph, "Device graph preset: heavyhex, grid, line, complete");
  app.add_flag("--dd", f.dd, "Insert dynamical decoupling on idle qubits");
  app.add_flag("--no-perm-trick", f.no_perm_trick, "Build reference circuits without the permutation trick");
  app.add_option("--external", f.external, "External compiler command (request and response paths appended)");

  struct Sub {
    const char* name;
    const char* help;
    std::optional<Stage> stage;
  };
  const std::vector<Sub> subs = {
      {"generate", "Sample high-level circuits", Stage::kGenerate},
      {"compile", "Compile circuits onto the device graph", Stage::kCompile},
      {"mirror", "Build reference circuits and mirror suites", Stage::kMirror},
      {"simulate", "Simulate every mirror circuit under the error model", Stage::kSimulate},
      {"analyze", "Estimate fidelities and write results.json and volumetric.csv", Stage::kAnalyze},
      {"report", "Write a text summary of results.json", Stage::kReport},
      {"run", "Run every stage", std::nullopt},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) handles.push_back(app.add_subcommand(s.name, s.help));
  auto* replay_cmd = app.add_subcommand("replay", "Rerun a stage and all later stages of an existing campaign");
  replay_cmd->add_option("--stage", f.stage, "First stage to rerun")->check(CLI::IsMember(
      {"generate", "compile", "mirror", "simulate", "analyze", "report"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (replay_cmd->parsed()) {
      if (f.out.empty()) throw ConfigError("replay needs --out <campaign directory>");
      mirrorbench::replay(f.out, mirrorbench::stage_from_name(f.stage), f.jobs);
      std::cout << "replayed " << f.stage << " onward in " << f.out << "\n";
      return 0;
    }
    const CampaignConfig cfg = resolve_config(f);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!handles[i]->parsed()) continue;
      store_config(cfg);
      if (subs[i].stage) {
        mirrorbench::run_stage(cfg, *subs[i].stage);
        std::cout << subs[i].name << ": done (" << cfg.output_dir.string() << ")\n";
        if (*subs[i].stage == Stage::kReport) {
          std::ifstream r(cfg.output_dir / "report.txt");
          std::cout << r.rdbuf();
        }
      } else {
        mirrorbench::run_campaign(cfg);
        std::ifstream r(cfg.output_dir / "report.txt");
        std::cout << r.rdbuf();
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const StageError& e) {
    std::cerr << "stage failure: " << e.what() << "\n";
    return kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "stage failure: " << e.what() << "\n";
    return kExitStage;
  }
  return 0;
}
