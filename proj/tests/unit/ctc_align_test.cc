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

#include <cmath>
#include <random>

#include "fixtures.h"
#include "oracles.h"
#include "psp/psp.h"

namespace psp {
namespace {

TEST(ForceAlign, SingleFrameSingleTarget) {
  Matrix e(1, 2);
  e << std::log(1e-12), 0.0;
  const std::vector<int> targets = {1};
  const Alignment a = ForceAlign(e, targets, 0);
  ASSERT_EQ(a.spans.size(), 1u);
  EXPECT_EQ(a.spans[0].start_frame, 0);
  EXPECT_EQ(a.spans[0].end_frame, 1);
}

TEST(ForceAlign, RepeatForcesBlankBetween) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix e = oracles::RandomEmissions(3, 3, rng);
    const std::vector<int> targets = {1, 1};
    const Alignment a = ForceAlign(e, targets, 0);
    ASSERT_EQ(a.spans.size(), 2u);
    EXPECT_EQ(a.spans[0].start_frame, 0);
    EXPECT_EQ(a.spans[0].end_frame, 1);
    EXPECT_EQ(a.spans[1].start_frame, 2);
    EXPECT_EQ(a.spans[1].end_frame, 3);
  }
}

TEST(ForceAlign, InfeasibleLength) {
  Matrix e = Matrix::Constant(2, 3, std::log(1.0 / 3.0));
  const std::vector<int> targets = {1, 1};
  EXPECT_EQ(MinimumCtcFrames(targets), 3);
  try {
    ForceAlign(e, targets, 0);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kInfeasibleLength);
  }
  const std::vector<int> bad = {0};
  EXPECT_THROW(ForceAlign(e, bad, 0), Error);
}

TEST(ForceAlign, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; checked < 200; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 6);
    const int V = 2 + static_cast<int>(rng() % 3);
    const int L = 1 + static_cast<int>(rng() % 3);
    std::vector<int> targets(L);
    for (int& t : targets) t = 1 + static_cast<int>(rng() % (V - 1));
    if (MinimumCtcFrames(targets) > T) continue;
    const Matrix e = oracles::RandomEmissions(T, V, rng);
    const auto oracle = oracles::BruteForceAlign(e, targets, 0);
    ASSERT_TRUE(oracle.has_value());
    const Alignment a = ForceAlign(e, targets, 0);
    EXPECT_NEAR(a.path_log_prob, oracle->log_prob, 1e-9);
    EXPECT_EQ(a.frame_labels, oracle->labels);
    ASSERT_EQ(a.spans.size(), oracle->spans.size());
    for (std::size_t i = 0; i < a.spans.size(); ++i) {
      EXPECT_EQ(a.spans[i].start_frame, oracle->spans[i].start);
      EXPECT_EQ(a.spans[i].end_frame, oracle->spans[i].end);
      EXPECT_NEAR(a.spans[i].score, oracle->spans[i].score, 1e-9);
      EXPECT_GT(a.spans[i].frames(), 0);
      if (i > 0) {
        EXPECT_GE(a.spans[i].start_frame, a.spans[i - 1].end_frame);
      }
    }
    ++checked;
  }
}

TEST(ForceAlign, PlantedBundleRecoversPlan) {
  const UtteranceBundle b = fixtures::PlantedBundle(
      "u", Language::kTelugu, {{"ట", 3, {}}, {"ట", 2, {}}, {"మ", 4, {}}});
  const TargetSequence t = TextToTargets(b.text, b.vocab, b.blank_index);
  const Alignment a = AlignBundle(b, t);
  ASSERT_EQ(a.spans.size(), 3u);
  EXPECT_EQ(a.spans[0].start_frame, 1);
  EXPECT_EQ(a.spans[0].end_frame, 4);
  EXPECT_EQ(a.spans[1].start_frame, 5);
  EXPECT_EQ(a.spans[1].end_frame, 7);
  EXPECT_EQ(a.spans[2].start_frame, 8);
  EXPECT_EQ(a.spans[2].end_frame, 12);
  EXPECT_EQ(a.spans[2].grapheme, "మ");
}

TEST(GreedyFrames, RowMaxima) {
  Matrix e(2, 2);
  e << 0.1, 0.9, 0.8, 0.2;
  EXPECT_EQ(GreedyFrames(e), (std::vector<int>{1, 0}));
}

TEST(GreedyFrames, TieGoesToLowerIndex) {
  Matrix e(1, 3);
  e << -2.0, -0.5, -0.5;
  EXPECT_EQ(GreedyFrames(e), (std::vector<int>{1}));
}

TEST(GreedyFrames, AgreesWithExhaustiveMaxAndColumnShift) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix e = oracles::RandomEmissions(7, 5, rng);
    std::vector<int> expect;
    for (Eigen::Index t = 0; t < e.rows(); ++t) {
      int best = 0;
      for (int v = 1; v < e.cols(); ++v) {
        if (e(t, v) > e(t, best)) best = v;
      }
      expect.push_back(best);
    }
    EXPECT_EQ(GreedyFrames(e), expect);
    Matrix shifted = e.array() + 3.0;
    EXPECT_EQ(GreedyFrames(shifted), expect);
  }
}

TEST(SpanEmbedding, Examples) {
  Matrix emb(3, 2);
  emb << 1, 0, 0, 1, 0, 1;
  AlignmentSpan s;
  s.start_frame = 0;
  s.end_frame = 1;
  EXPECT_EQ(SpanEmbedding(emb, s), Vector(emb.row(0).transpose()));
  s.start_frame = 1;
  s.end_frame = 3;
  EXPECT_EQ(SpanEmbedding(emb, s), Vector(emb.row(1).transpose()));
  s.start_frame = 0;
  s.end_frame = 2;
  const Vector m = SpanEmbedding(emb, s);
  EXPECT_DOUBLE_EQ(m[0], 0.5);
  EXPECT_DOUBLE_EQ(m[1], 0.5);
  s.end_frame = 4;
  EXPECT_THROW(SpanEmbedding(emb, s), Error);
}

}  // namespace
}  // namespace psp
