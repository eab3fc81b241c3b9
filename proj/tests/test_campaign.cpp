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

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mirrorbench/campaign.hpp"
#include "mirrorbench/compiler.hpp"
#include "oracle.hpp"

namespace mb = mirrorbench;
namespace fs = std::filesystem;

namespace {

class CampaignTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() /
            ("mirrorbench_campaign_" + std::to_string(::getpid()) + "_" + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  mb::CampaignConfig small_qv(const std::string& sub) const {
    mb::CampaignConfig cfg;
    cfg.family = "qv";
    cfg.shapes = {{3, 3}, {4, 4}};
    cfg.circuits_per_shape = 2;
    cfg.k1 = cfg.k2 = cfg.k3 = 10;
    cfg.shots = 200;
    cfg.error_model.g1_pol = 0.999;
    cfg.error_model.g2_pol = 0.98;
    cfg.graph = "heavyhex";
    cfg.seed = 7;
    cfg.bootstrap_resamples = 100;
    cfg.oracle_max_n = 3;
    cfg.output_dir = root_ / sub;
    return cfg;
  }

  fs::path root_;
};

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = s.str();
  }
  return out;
}

}  // namespace

TEST_F(CampaignTest, SmallQvCampaignProducesAllArtifacts) {
  const auto cfg = small_qv("run");
  const auto results = mb::run_campaign(cfg);
  ASSERT_EQ(results.at("shapes").size(), 2U);
  for (const auto& s : results.at("shapes")) {
    EXPECT_EQ(s.at("circuits").size(), 2U);
    EXPECT_TRUE(s.at("mcfe_pol").at("available").get<bool>());
  }
  EXPECT_TRUE(results.at("shapes")[0].contains("oracle_mean_abs_deviation"));
  EXPECT_FALSE(results.at("shapes")[1].contains("oracle_mean_abs_deviation"));
  for (const char* f : {"config.json", "manifest.json", "results.json", "volumetric.csv", "report.txt"}) {
    EXPECT_TRUE(fs::exists(cfg.output_dir / f)) << f;
  }
  const auto conf = mb::read_json_file(cfg.output_dir / "config.json");
  EXPECT_EQ(conf.at("config_hash").get<std::string>(), mb::config_hash(cfg));
  EXPECT_EQ(results.at("provenance").at("config_hash").get<std::string>(), mb::config_hash(cfg));
}

TEST_F(CampaignTest, RerunsAreByteIdenticalAcrossJobCounts) {
  auto a = small_qv("a");
  auto b = small_qv("b");
  b.jobs = 3;
  mb::run_campaign(a);
  mb::run_campaign(b);
  EXPECT_EQ(snapshot(a.output_dir), snapshot(b.output_dir));
}

TEST_F(CampaignTest, MissingErrorModelFileIsConfigError) {
  const mb::json j = {{"family", "qv"}, {"shapes", {{3, 3}}}, {"error_model_file", "nope.json"}};
  EXPECT_THROW(mb::config_from_json(j, root_), mb::ConfigError);
}

TEST_F(CampaignTest, UnknownKeyIsConfigError) {
  const mb::json j = {{"family", "qv"}, {"shapes", {{3, 3}}}, {"shotz", 10}};
  EXPECT_THROW(mb::config_from_json(j, root_), mb::ConfigError);
}

TEST_F(CampaignTest, ConfigRoundTripsThroughJson) {
  const auto cfg = small_qv("rt");
  const auto back = mb::config_from_json(mb::config_to_json(cfg));
  EXPECT_EQ(mb::config_hash(back), mb::config_hash(cfg));
  EXPECT_EQ(back.error_model, cfg.error_model);
}

TEST_F(CampaignTest, ReplayOnEmptyDirectoryIsStageError) {
  EXPECT_THROW(mb::replay(root_ / "empty", mb::Stage::kAnalyze), mb::StageError);
}

TEST_F(CampaignTest, StageWithoutUpstreamIsStageError) {
  const auto cfg = small_qv("partial");
  mb::run_stage(cfg, mb::Stage::kGenerate);
  EXPECT_THROW(mb::run_stage(cfg, mb::Stage::kMirror), mb::StageError);
}

TEST_F(CampaignTest, ReplayAnalyzeLeavesBundleUnchanged) {
  const auto cfg = small_qv("replay");
  mb::run_campaign(cfg);
  const auto before = snapshot(cfg.output_dir);
  mb::replay(cfg.output_dir, mb::Stage::kAnalyze);
  EXPECT_EQ(snapshot(cfg.output_dir), before);
}

TEST_F(CampaignTest, ExternalPreprocessorSwapOnReplay) {
  mb::CampaignConfig cfg;
  cfg.family = "hamsim";
  cfg.shapes = {{3, 1}, {3, 2}};
  cfg.circuits_per_shape = 2;
  cfg.k1 = cfg.k2 = cfg.k3 = 4;
  cfg.shots = 100;
  cfg.graph = "complete";
  cfg.bootstrap_resamples = 50;
  cfg.output_dir = root_ / "swap";
  mb::run_campaign(cfg);
  const auto before = snapshot(cfg.output_dir);

  const fs::path script = root_ / "echo.sh";
  std::ofstream(script) << "#!/bin/sh\ncp \"$1\" \"$2\"\n";
  fs::permissions(script, fs::perms::owner_all);
  auto conf = mb::read_json_file(cfg.output_dir / "config.json");
  conf["external_command"] = script.string();
  mb::write_json_file(cfg.output_dir / "config.json", conf);
  mb::replay(cfg.output_dir, mb::Stage::kCompile);

  const auto after = snapshot(cfg.output_dir);
  for (const auto& [path, body] : before) {
    if (path.rfind("circuits/", 0) == 0) EXPECT_EQ(after.at(path), body) << path;
  }
  int checked = 0;
  for (const auto& e : fs::directory_iterator(cfg.output_dir / "circuits")) {
    const auto id = e.path().stem().string();
    const auto high = mb::circuit_from_json(mb::read_json_file(e.path()));
    const auto comp = mb::compiled_from_json(mb::read_json_file(cfg.output_dir / "compiled" / (id + ".json")));
    // The echo returns the input unchanged, so the compiled circuit is the input itself.
    EXPECT_TRUE(comp.permutation.is_identity());
    const mb::MatX u = oracle::circuit_unitary(high);
    EXPECT_NEAR(oracle::process_fidelity(oracle::circuit_unitary(comp.circuit), mb::expected_unitary(comp, u)), 1.0,
                1e-10);
    ++checked;
  }
  EXPECT_EQ(checked, 4);
  EXPECT_TRUE(fs::exists(cfg.output_dir / "results.json"));
}
