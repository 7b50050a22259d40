// Copyright 2026 The floquet-toric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "floquet_toric/io.hpp"

namespace floquet_toric {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("ft_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + " " + FT_CLI_PATH + " " + args + " > " + (dir_ / "stdout.txt").string() +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path config(const std::string& name, const Json& j) const {
    const fs::path p = dir_ / name;
    write_json(p, j);
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

const std::string kConfigDir = FT_CONFIG_DIR;

TEST_F(CliTest, EffectiveHamRowAHasPlaquetteMaximum) {
  const auto cfg = config("c.json", {{"mode", "plaquette"}, {"params", kConfigDir + "/params_row_a.json"}});
  ASSERT_EQ(run("effective-ham --config " + cfg.string() + " --out " + (dir_ / "o").string()), 0);
  const Json j = read_json(dir_ / "o/effective_hamiltonian.json");
  EXPECT_EQ(j["weight4_maximum"]["string"], "X0.Z1.Z2.X3");
  EXPECT_TRUE(fs::exists(dir_ / "o/propagator.bin"));
  EXPECT_EQ(read_json(dir_ / "o/propagator.json")["rows"], 16);
}

TEST_F(CliTest, EffectiveHamOptimizedParamsHitTarget) {
  const auto cfg = config("c.json", {{"mode", "plaquette"}, {"params", kConfigDir + "/params_pi8.json"}});
  ASSERT_EQ(run("effective-ham --config " + cfg.string() + " --out " + (dir_ / "o").string()), 0);
  const Json j = read_json(dir_ / "o/effective_hamiltonian.json");
  EXPECT_EQ(j["weight4_maximum"]["string"], "X0.Z1.Z2.X3");
  EXPECT_NEAR(j["extracted_jtau"].get<double>(), std::numbers::pi / 8, 1e-3);
  EXPECT_LT(j["error_ratio"].get<double>(), 5e-3);
}

TEST_F(CliTest, ProbeEntropyOnExactState) {
  ASSERT_EQ(run("probe entropy --out " + (dir_ / "o").string()), 0);
  const Json j = read_json(dir_ / "o/entropy.json");
  ASSERT_EQ(j["topological_entropy"].size(), 2u);
  for (const Json& row : j["topological_entropy"]) {
    EXPECT_NEAR(row["S_topo"].get<double>(), -std::log(2.0), 1e-10) << row["partition"];
  }
  EXPECT_EQ(slurp(dir_ / "o/entropy_scaling.csv").rfind("# ", 0), 0u);
}

TEST_F(CliTest, ProbeBraidPhases) {
  ASSERT_EQ(run("probe braid --out " + (dir_ / "o").string()), 0);
  for (const Json& row : read_json(dir_ / "o/braiding.json")["phases"]) {
    EXPECT_NEAR(row["re"].get<double>(), -1.0, 1e-10);
    EXPECT_NEAR(row["im"].get<double>(), 0.0, 1e-10);
  }
}

TEST_F(CliTest, InvalidLatticeExitsTwoWithErrorJson) {
  const auto cfg = config("bad.json", {{"lattice", {{"rows", 1}, {"cols", 3}, {"boundary", "open"}}}});
  EXPECT_EQ(run("prepare ideal --config " + cfg.string() + " --out " + (dir_ / "o").string()), 2);
  const Json e = read_json(dir_ / "o/error.json");
  EXPECT_EQ(e["error"], "InvalidSpec");
  EXPECT_FALSE(e["message"].get<std::string>().empty());
  EXPECT_FALSE(fs::exists(dir_ / "o/manifest.json"));
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("probe sideways"), 2);
  const auto cfg = config("c.json", {{"lattice", {{"rows", 4}, {"cols", 5}, {"boundary", "open"}}},
                                     {"partitions", {"nowhere"}}});
  EXPECT_EQ(run("probe entropy --config " + cfg.string() + " --out " + (dir_ / "o").string()), 2);
  EXPECT_EQ(read_json(dir_ / "o/error.json")["error"], "UnsupportedGeometry");
}

TEST_F(CliTest, MissingConfigIsAnIoError) {
  EXPECT_EQ(run("probe entropy --config /nonexistent.json --out " + (dir_ / "o").string()), 1);
  EXPECT_EQ(read_json(dir_ / "o/error.json")["error"], "Io");
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  const auto cfg = config("c.json", {{"mode", "plaquette"}, {"params", kConfigDir + "/params_pi8.json"}});
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(run("effective-ham --seed 11 --config " + cfg.string() + " --out " + (dir_ / out).string()), 0);
    ASSERT_EQ(run("prepare ideal --out " + (dir_ / out / "prep").string()), 0);
  }
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir_ / "a")) {
    if (!e.is_regular_file()) continue;
    const fs::path twin = dir_ / "b" / fs::relative(e.path(), dir_ / "a");
    EXPECT_EQ(slurp(e.path()), slurp(twin)) << e.path();
    ++compared;
  }
  EXPECT_GE(compared, 8u);
  const Json m = read_json(dir_ / "a/manifest.json");
  EXPECT_EQ(m["seed"], 11);
  EXPECT_EQ(m["config"]["mode"], "plaquette");
  EXPECT_TRUE(m.contains("version"));
}

TEST_F(CliTest, EnvironmentOverridesOutputAndThreads) {
  ASSERT_EQ(run("probe braid", "FLOQUET_TORIC_OUT=" + (dir_ / "env").string() + " FLOQUET_TORIC_THREADS=2"), 0);
  EXPECT_EQ(read_json(dir_ / "env/manifest.json")["threads"], 2);
}

}  // namespace
}  // namespace floquet_toric
