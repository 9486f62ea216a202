// Copyright 2026 The PSP Authors
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
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.h"
#include "psp/psp.h"

namespace psp {
namespace {

namespace fs = std::filesystem;

int RunPsp(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(PSP_CLI_PATH) + " --tables " + PSP_TEST_TABLES + " " + args +
                          " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = fixtures::TempDir("cli"); }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, EndToEnd) {
  const fixtures::World native = fixtures::PlantedWorld(Language::kTelugu, 24, 4, 0.0, 1);
  fixtures::World system = fixtures::PlantedWorld(Language::kTelugu, 12, 4, 0.4, 2);
  for (auto& b : system.bundles) b.id = "sys_" + b.id;
  WriteCorpus(dir_ / "native", "native-te", native.bundles);
  WriteCorpus(dir_ / "system", "system-te", system.bundles);
  const fs::path log = dir_ / "log.txt";

  ASSERT_EQ(RunPsp("validate " + (dir_ / "native").string(), log), 0) << Slurp(log);
  ASSERT_EQ(RunPsp("centroids --corpus " + (dir_ / "native").string() +
                    " --language te --out " + (dir_ / "cent").string(),
                log),
            0)
      << Slurp(log);
  ASSERT_EQ(RunPsp("bank --corpus " + (dir_ / "native").string() + " --language te --out " +
                    (dir_ / "bank").string(),
                log),
            0)
      << Slurp(log);

  // Held-out ids overlap the centroid corpus here, so sanity must refuse.
  EXPECT_EQ(RunPsp("sanity --corpus " + (dir_ / "native").string() + " --language te --centroids " +
                    (dir_ / "cent").string() + " --refs " + (dir_ / "bank").string() +
                    " --out " + (dir_ / "floor.json").string(),
                log),
            1);
  EXPECT_NE(Slurp(log).find("OverlapWithCentroidCorpus"), std::string::npos) << Slurp(log);

  const std::string score_args = "--replicates 200 --seed 3 score --system demo --corpus " +
                                 (dir_ / "system").string() + " --language te --refs " +
                                 (dir_ / "bank").string() + " --dump-utterances " +
                                 (dir_ / "utts.jsonl").string() + " --out ";
  setenv("PSP_CENTROID_DIR", (dir_ / "cent").c_str(), 1);
  const int rc = RunPsp(score_args + (dir_ / "a.json").string(), log);
  EXPECT_EQ(rc, 0) << Slurp(log);
  EXPECT_EQ(RunPsp(score_args + (dir_ / "b.json").string() + " --threads 3", log), rc);
  unsetenv("PSP_CENTROID_DIR");
  EXPECT_EQ(Slurp(dir_ / "a.json"), Slurp(dir_ / "b.json"));
  const Scorecard card = ReadScorecard(dir_ / "a.json");
  EXPECT_EQ(card.system, "demo");
  EXPECT_EQ(card.n_wavs, 12);
  EXPECT_FALSE(card.IsPartial());
  const double rr = card.per_dimension.at(Dimension::kRR).score->collapse_rate;
  EXPECT_GT(rr, 0.1);
  EXPECT_LT(rr, 0.7);
  EXPECT_FALSE(Slurp(dir_ / "utts.jsonl").empty());

  EXPECT_EQ(RunPsp("report --format markdown " + (dir_ / "a.json").string(), log), 0);
  EXPECT_NE(Slurp(log).find("demo"), std::string::npos);

  UtteranceBundle bad = native.bundles[0];
  bad.embeddings.conservativeResize(bad.embeddings.rows() - 1, Eigen::NoChange);
  WriteBundle(dir_ / "bad", bad);
  EXPECT_EQ(RunPsp("validate " + (dir_ / "bad").string(), log), 1);
  EXPECT_NE(Slurp(log).find("frame count mismatch"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(RunPsp("score", dir_ / "log.txt"), 1);
  EXPECT_EQ(RunPsp("frobnicate", dir_ / "log.txt"), 1);
  EXPECT_EQ(RunPsp("--help", dir_ / "log.txt"), 0);
}

}  // namespace
}  // namespace psp
