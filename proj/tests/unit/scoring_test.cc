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

#include <algorithm>

#include "fixtures.h"
#include "psp/psp.h"

namespace psp {
namespace {

ScoreOptions FastOptions() {
  ScoreOptions o;
  o.settings.bootstrap.replicates = 200;
  o.settings.bootstrap.seed = 7;
  return o;
}

CorpusScore Score(const fixtures::World& w, const ScoreOptions& o, const std::string& system = "sys") {
  return ScoreCorpus(w.bundles, system, w.language, w.centroids, w.bank, fixtures::Tables(), o);
}

TEST(ScoreCorpus, PlantedCollapseRate) {
  const fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 40, 10, 0.3, 1);
  const CorpusScore s = Score(w, FastOptions());
  const DimensionResult& rr = s.card.per_dimension.at(Dimension::kRR);
  ASSERT_TRUE(rr.score.has_value());
  EXPECT_EQ(rr.score->n_tokens, 400);
  EXPECT_DOUBLE_EQ(rr.score->collapse_rate, w.planted_rr_collapses / 400.0);
  EXPECT_GE(rr.score->collapse_rate, 0.25);
  EXPECT_LE(rr.score->collapse_rate, 0.35);
  EXPECT_LE(rr.score->collapse_ci_low, rr.score->collapse_rate);
  EXPECT_GE(rr.score->collapse_ci_high, rr.score->collapse_rate);
  EXPECT_NEAR(rr.score->mean_fidelity, 1.0 - rr.score->collapse_rate, 1e-12);
}

TEST(ScoreCorpus, SelfDistanceAndNativeFidelity) {
  const fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 20, 5, 0.0, 2);
  const CorpusScore s = Score(w, FastOptions());
  ASSERT_TRUE(s.card.fad.has_value());
  ASSERT_TRUE(s.card.psd.has_value());
  EXPECT_LT(s.card.fad->total, 1e-2);
  EXPECT_LT(s.card.psd->total, 1e-2);
  for (Dimension d : {Dimension::kRR, Dimension::kAF}) {
    EXPECT_GE(s.card.per_dimension.at(d).score->mean_fidelity, 0.99);
  }
  EXPECT_FALSE(s.card.IsPartial());
  EXPECT_EQ(s.card.n_wavs, 20);
}

TEST(ScoreCorpus, ApplicabilityMatrix) {
  for (Language l : kAllLanguages) {
    const fixtures::World w = fixtures::PlantedWorld(l, 6, 3, 0.2, 3);
    const CorpusScore s = Score(w, FastOptions());
    const auto& dims = s.card.per_dimension;
    EXPECT_EQ(dims.at(Dimension::kRR).status, DimensionStatus::kOk);
    EXPECT_EQ(dims.at(Dimension::kLF).status, DimensionStatus::kOk);
    if (l == Language::kTamil) {
      EXPECT_EQ(dims.at(Dimension::kAF).status, DimensionStatus::kNotApplicable);
      EXPECT_EQ(dims.at(Dimension::kZF).status, DimensionStatus::kOk);
    } else {
      EXPECT_EQ(dims.at(Dimension::kAF).status, DimensionStatus::kOk);
      EXPECT_FALSE(dims.contains(Dimension::kZF));
    }
  }
}

TEST(ScoreCorpus, TamilNeverEmitsAfTokens) {
  const fixtures::World w = fixtures::PlantedWorld(Language::kTamil, 4, 3, 0.0, 4);
  ScoreOptions o = FastOptions();
  o.keep_utterance_results = true;
  const CorpusScore s = Score(w, o);
  for (const UtteranceResult& r : s.utterances) {
    EXPECT_FALSE(r.tokens.contains(Dimension::kAF));
    EXPECT_TRUE(r.tokens.contains(Dimension::kZF));
  }
}

TEST(ScoreCorpus, DeterministicAcrossThreadCounts) {
  const fixtures::World w = fixtures::PlantedWorld(Language::kHindi, 12, 4, 0.4, 5);
  ScoreOptions o = FastOptions();
  const std::string base = ScorecardToJson(Score(w, o).card);
  EXPECT_EQ(ScorecardToJson(Score(w, o).card), base);
  for (int t : {2, 4}) {
    o.threads = t;
    o.settings.bootstrap.threads = t;
    EXPECT_EQ(ScorecardToJson(Score(w, o).card), base);
  }
  fixtures::World shuffled = w;
  std::reverse(shuffled.bundles.begin(), shuffled.bundles.end());
  EXPECT_EQ(ScorecardToJson(Score(shuffled, FastOptions()).card), base);
}

TEST(ScoreCorpus, FailedUtterancesMakePartialCard) {
  fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 8, 3, 0.0, 6);
  w.bundles[2].embeddings.conservativeResize(w.bundles[2].embeddings.rows() - 1, Eigen::NoChange);
  w.bundles[5].text = "xyz";
  const CorpusScore s = Score(w, FastOptions());
  EXPECT_EQ(s.card.n_failed, 2);
  EXPECT_EQ(s.card.n_wavs, 6);
  EXPECT_EQ(s.card.failed_utterances, (std::vector<std::string>{"utt0002", "utt0005"}));
  EXPECT_TRUE(s.card.IsPartial());
  const bool dropped = std::any_of(s.card.warnings.begin(), s.card.warnings.end(),
                                   [](const std::string& m) { return m.find("'x'") != std::string::npos; });
  EXPECT_TRUE(dropped);
}

TEST(ScoreCorpus, LanguageMismatch) {
  const fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 3, 2, 0.0, 7);
  CentroidSet ta = w.centroids;
  ta.language = Language::kTamil;
  try {
    ScoreCorpus(w.bundles, "s", Language::kTelugu, ta, w.bank, fixtures::Tables(), FastOptions());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLanguageMismatch);
  }
}

TEST(ScoreCorpus, LfFallsBackToProvenanceOrErrors) {
  fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 6, 2, 0.0, 8);
  CorpusScore s = Score(w, FastOptions());
  ASSERT_TRUE(s.card.lf_native_ratio.has_value());
  EXPECT_DOUBLE_EQ(*s.card.lf_native_ratio, 1.9);
  EXPECT_FALSE(s.card.per_dimension.at(Dimension::kLF).score->has_collapse);
  w.centroids.provenance.lf_native_ratio.reset();
  s = Score(w, FastOptions());
  EXPECT_EQ(s.card.per_dimension.at(Dimension::kLF).status, DimensionStatus::kError);
  EXPECT_TRUE(s.card.IsPartial());
}

TEST(ScoreCorpus, FloorNormalization) {
  const fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 20, 5, 0.3, 9);
  const fixtures::World native = fixtures::PlantedWorld(Language::kTelugu, 20, 5, 0.5, 10);
  ScoreOptions o = FastOptions();
  o.floor = Score(native, o, "native").card;
  o.floor->kind = ScorecardKind::kNativeFloor;
  const CorpusScore s = Score(w, o);
  const DimensionScore& rr = *s.card.per_dimension.at(Dimension::kRR).score;
  const double floor = o.floor->per_dimension.at(Dimension::kRR).score->mean_fidelity;
  ASSERT_TRUE(rr.normalized.has_value());
  EXPECT_NEAR(*rr.normalized, NormalizeFloor(rr.mean_fidelity, floor), 1e-12);
}

TEST(Sanity, HeldOutOverlapIsRejected) {
  fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 4, 2, 0.0, 11);
  w.centroids.provenance.utterance_ids = {"other", "utt0001"};
  std::vector<std::string> ids;
  for (const auto& b : w.bundles) ids.push_back(b.id);
  try {
    RunSanity(
        w.bundles.size(), [&](std::size_t i) { return w.bundles[i]; }, ids, w.language,
        w.centroids, w.bank, fixtures::Tables(), FastOptions());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverlapWithCentroidCorpus);
  }
  w.centroids.provenance.utterance_ids = {"other"};
  const CorpusScore s = RunSanity(
      w.bundles.size(), [&](std::size_t i) { return w.bundles[i]; }, ids, w.language, w.centroids,
      w.bank, fixtures::Tables(), FastOptions());
  EXPECT_EQ(s.card.kind, ScorecardKind::kNativeFloor);
  EXPECT_GE(s.card.per_dimension.at(Dimension::kRR).score->mean_fidelity, 0.99);
}

TEST(ScoreCorpus, FingerprintTracksSettings) {
  const fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 3, 2, 0.0, 12);
  ScoreSettings s;
  const std::string a = ConfigFingerprint(w.centroids, fixtures::Tables(), s);
  EXPECT_EQ(a, ConfigFingerprint(w.centroids, fixtures::Tables(), s));
  s.tau = 0.4;
  EXPECT_NE(a, ConfigFingerprint(w.centroids, fixtures::Tables(), s));
  s.tau = 0.5;
  s.bootstrap.seed = 1;
  EXPECT_NE(a, ConfigFingerprint(w.centroids, fixtures::Tables(), s));
}

TEST(ScoreCorpus, UtteranceDumpIsSingleLineJson) {
  const fixtures::World w = fixtures::PlantedWorld(Language::kTelugu, 2, 2, 0.0, 13);
  ScoreOptions o = FastOptions();
  o.keep_utterance_results = true;
  const CorpusScore s = Score(w, o);
  ASSERT_EQ(s.utterances.size(), 2u);
  const std::string line = UtteranceResultToJson(s.utterances[0]);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_NE(line.find("\"RR\""), std::string::npos);
}

}  // namespace
}  // namespace psp
