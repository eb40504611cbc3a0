// Copyright 2026 The maskforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <json.hpp>

#include "maskforge/eval.hpp"
#include "maskforge/pnm.hpp"

namespace fs = std::filesystem;

namespace maskforge {
namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("maskforge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args, const std::string& env = {}) const {
    const std::string cmd = env + " " + MASKFORGE_CLI_PATH + " " + args + " > " + (dir_ / "log.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

TEST_F(Cli, UsageErrorsExitWithOne) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("mask"), 1);
  EXPECT_EQ(run("synth --generate 2x260:360 --count 0 -o " + path("f")), 1);
  EXPECT_EQ(run("synth --generate 2x260:360 --noise pink:1 -o " + path("f")), 1);
  EXPECT_EQ(run("synth -o " + path("f")), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, MissingInputExitsWithTwo) { EXPECT_EQ(run("mask " + path("nope.pgm") + " -o " + path("out")), 2); }

TEST_F(Cli, UnknownConfigKeyIsRejected) {
  std::ofstream(path("cfg.json")) << R"({"blur_k": 15, "blur_kk": 3})";
  ASSERT_EQ(run("synth --generate 2x260:360 --seed 3 -o " + path("fx")), 0);
  EXPECT_EQ(run("mask " + path("fx/image.pgm") + " --config " + path("cfg.json") + " -o " + path("out")), 1);
  EXPECT_FALSE(fs::exists(path("out/overlap.pgm")));
}

TEST_F(Cli, SeedFromEnvironment) {
  ASSERT_EQ(run("synth --generate 2x260:360 -o " + path("env"), "MASKFORGE_SEED=5"), 0);
  ASSERT_EQ(run("synth --generate 2x260:360 --seed 5 -o " + path("flag")), 0);
  ASSERT_EQ(run("synth --generate 2x260:360 -o " + path("default")), 0);
  EXPECT_EQ(slurp(path("env/image.pgm")), slurp(path("flag/image.pgm")));
  EXPECT_NE(slurp(path("env/image.pgm")), slurp(path("default/image.pgm")));
  const auto params = nlohmann::json::parse(slurp(path("env/params.json")));
  EXPECT_EQ(params.at("seed"), 5);
}

TEST_F(Cli, MaskWritesInputSizedMasks) {
  ASSERT_EQ(run("synth --generate 2x260:360 --seed 1000 -o " + path("fx")), 0);
  ASSERT_EQ(run("mask " + path("fx/image.pgm") + " --trace -o " + path("out")), 0);
  const GrayImage input = load_pgm(path("fx/image.pgm"));
  for (const char* name : {"foreground.pgm", "overlap.pgm", "component_0.pgm", "component_1.pgm"}) {
    const GrayImage m = load_pgm(path("out/") + name);
    EXPECT_EQ(m.width(), input.width()) << name;
    EXPECT_EQ(m.height(), input.height()) << name;
  }
  EXPECT_TRUE(fs::exists(path("out/reconstruction.ppm")));
  for (const char* stage : {"b", "c", "d", "e", "f", "g", "h", "i", "j", "k"})
    EXPECT_TRUE(fs::exists(path("out/stage_") + stage + ".pgm")) << stage;
  const auto prov = nlohmann::json::parse(slurp(path("out/provenance.json")));
  EXPECT_TRUE(prov.contains("gain"));
  EXPECT_TRUE(prov.contains("config"));
}

TEST_F(Cli, SynthFromPrintsAndEval) {
  ASSERT_EQ(run("synth --generate 2x260:360 --seed 7 --rotate 10,-15 --offset 0:-60,0:60 -o " + path("manual")), 0);
  EXPECT_EQ(run("synth --generate 2x260:360 --rotate 10 --offset 0:-60 -o " + path("bad")), 1);
  ASSERT_EQ(run("synth --generate 2x260:360 --seed 1000 --count 2 -o " + path("set")), 0);
  EXPECT_TRUE(fs::exists(path("set/fixture_000/image.pgm")));
  EXPECT_TRUE(fs::exists(path("set/fixture_001/gt_overlap.pgm")));
  ASSERT_EQ(run("eval --fixtures " + path("set") + " -o " + path("report.json")), 0);
  const EvalReport rep = parse_report(slurp(path("report.json")));
  EXPECT_EQ(rep.schema, kReportSchema);
  ASSERT_EQ(rep.fixtures.size(), 2u);
  EXPECT_EQ(rep.fixtures[0].name, "fixture_000");
  EXPECT_EQ(rep.aggregate.fixtures, 2);
  EXPECT_EQ(run("eval --fixtures " + path("missing") + " -o " + path("r2.json")), 2);
}

}  // namespace
}  // namespace maskforge
