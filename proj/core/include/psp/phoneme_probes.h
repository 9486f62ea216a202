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

#ifndef PSP_PHONEME_PROBES_H_
#define PSP_PHONEME_PROBES_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psp/ctc_align.h"
#include "psp/types.h"

namespace psp {

struct UtteranceBundle;
struct DimensionTable;
struct CentroidSet;

struct FidelityDetail {
  double value = 0.5;
  double native_similarity = 0.0;      // max(0, cos(e, mu_nat))
  double substitute_similarity = 0.0;  // max(0, cos(e, mu_sub))
  // Both rectified similarities were zero; value falls back to 0.5.
  bool low_confidence = false;
};

// s_n / (s_n + s_s) with rectified cosine similarities. Throws kZeroVector
// for any zero-norm input and kDimensionMismatch for unequal sizes.
FidelityDetail FidelityWithDetail(const Vector& embedding, const Vector& native_centroid,
                                  const Vector& substitute_centroid);
double Fidelity(const Vector& embedding, const Vector& native_centroid,
                const Vector& substitute_centroid);

struct TokenFidelity {
  std::string utterance_id;
  Dimension dimension = Dimension::kRR;
  std::string grapheme;
  double fidelity = 0.0;
  bool collapsed = false;  // fidelity < tau
  bool low_confidence = false;
  AlignmentSpan span;
};

// Scores every span whose grapheme is native for `table` and has a centroid
// entry. Spans lacking a centroid are skipped; a warning is appended when
// `warnings` is non-null.
std::vector<TokenFidelity> ScorePerPhoneme(const UtteranceBundle& bundle,
                                           std::span<const AlignmentSpan> spans,
                                           const DimensionTable& table,
                                           const CentroidSet& centroids,
                                           double tau = kDefaultCollapseThreshold,
                                           std::vector<std::string>* warnings = nullptr);

// Summed long-vowel and short-vowel span durations. A span counts as a vowel
// when its grapheme, or the last code point of its grapheme cluster, is in the
// LF table.
struct DurationContrast {
  double long_seconds = 0.0;
  long long_count = 0;
  double short_seconds = 0.0;
  long short_count = 0;

  bool HasContrast() const { return long_count > 0 && short_count > 0; }
  // mean(long) / mean(short). Requires HasContrast().
  double Ratio() const;
  DurationContrast& operator+=(const DurationContrast& other);
};

DurationContrast CollectDurations(std::span<const AlignmentSpan> spans,
                                  const DimensionTable& table, double frame_hop_ms);

// clamp((r_sys - 1) / (native_ratio - 1), 0, 1). native_ratio must exceed 1.
double LengthFidelityFromRatio(double system_ratio, double native_ratio);

// Length fidelity of one utterance; nullopt when it has no long/short
// contrast (the score is absent, not zero).
std::optional<double> LengthFidelity(std::span<const AlignmentSpan> spans,
                                     const DimensionTable& table, double native_ratio,
                                     double frame_hop_ms = kDefaultFrameHopMs);

enum class AggregationLevel { kUtterance, kCorpus };

struct DimensionScore {
  Dimension dimension = Dimension::kRR;
  double mean_fidelity = 0.0;
  double collapse_rate = 0.0;
  // False for LF, which is a duration-ratio score with no per-token collapse.
  bool has_collapse = true;
  long n_tokens = 0;
  // 95% bootstrap intervals; filled in by the scoring pipeline.
  double ci_low = 0.0;
  double ci_high = 0.0;
  double collapse_ci_low = 0.0;
  double collapse_ci_high = 0.0;
  std::optional<double> normalized;
};

// Utterance level: mean over the tokens. Corpus level: mean over utterances
// weighted by token count, which is the pooled token mean. Throws
// kEmptyTokens, or kInvalidArgument when tokens mix dimensions.
DimensionScore Aggregate(std::span<const TokenFidelity> tokens, AggregationLevel level);

// (system - native) / (1 - native), clamped to [0, 1]. Throws
// kDegenerateFloor when native >= 1 - 1e-9.
double NormalizeFloor(double system_stat, double native_stat);

}  // namespace psp

#endif  // PSP_PHONEME_PROBES_H_
