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

#include "psp/phoneme_probes.h"

#include <algorithm>
#include <cmath>

#include "psp/bundle.h"
#include "psp/centroids.h"
#include "psp/dimension_table.h"
#include "psp/error.h"
#include "psp/text_targets.h"

namespace psp {
namespace {

double RectifiedCosine(const Vector& a, double a_norm, const Vector& b) {
  const double b_norm = b.norm();
  if (b_norm == 0.0) throw Error(ErrorCode::kZeroVector, "centroid has zero norm");
  return std::max(0.0, a.dot(b) / (a_norm * b_norm));
}

// Vowel key for LF: the grapheme itself, or the trailing vowel sign of a
// consonant cluster.
enum class VowelKind { kNone, kLong, kShort };

VowelKind ClassifyVowel(const std::string& grapheme, const DimensionTable& table) {
  if (table.IsNative(grapheme)) return VowelKind::kLong;
  if (table.IsSubstitute(grapheme)) return VowelKind::kShort;
  std::u32string cps;
  try {
    cps = DecodeUtf8(grapheme);
  } catch (const Error&) {
    return VowelKind::kNone;
  }
  if (cps.size() < 2) return VowelKind::kNone;
  const std::string last = EncodeUtf8(cps.back());
  if (table.IsNative(last)) return VowelKind::kLong;
  if (table.IsSubstitute(last)) return VowelKind::kShort;
  return VowelKind::kNone;
}

}  // namespace

FidelityDetail FidelityWithDetail(const Vector& embedding, const Vector& native_centroid,
                                  const Vector& substitute_centroid) {
  if (embedding.size() != native_centroid.size() ||
      embedding.size() != substitute_centroid.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "fidelity inputs differ in dimension");
  }
  const double e_norm = embedding.norm();
  if (e_norm == 0.0) throw Error(ErrorCode::kZeroVector, "embedding has zero norm");
  FidelityDetail d;
  d.native_similarity = RectifiedCosine(embedding, e_norm, native_centroid);
  d.substitute_similarity = RectifiedCosine(embedding, e_norm, substitute_centroid);
  const double denom = d.native_similarity + d.substitute_similarity;
  if (denom == 0.0) {
    d.value = 0.5;
    d.low_confidence = true;
  } else {
    d.value = d.native_similarity / denom;
  }
  return d;
}

double Fidelity(const Vector& embedding, const Vector& native_centroid,
                const Vector& substitute_centroid) {
  return FidelityWithDetail(embedding, native_centroid, substitute_centroid).value;
}

std::vector<TokenFidelity> ScorePerPhoneme(const UtteranceBundle& bundle,
                                           std::span<const AlignmentSpan> spans,
                                           const DimensionTable& table,
                                           const CentroidSet& centroids, double tau,
                                           std::vector<std::string>* warnings) {
  std::vector<TokenFidelity> out;
  for (const AlignmentSpan& span : spans) {
    if (!table.IsNative(span.grapheme)) continue;
    const CentroidEntry* entry = centroids.Find(table.dimension, span.grapheme);
    if (entry == nullptr) {
      if (warnings != nullptr) {
        warnings->push_back(bundle.id + ": no " + std::string(DimensionName(table.dimension)) +
                            " centroid for '" + span.grapheme + "', token skipped");
      }
      continue;
    }
    const FidelityDetail d = FidelityWithDetail(SpanEmbedding(bundle.embeddings, span),
                                                entry->native_centroid,
                                                entry->substitute_centroid);
    TokenFidelity token;
    token.utterance_id = bundle.id;
    token.dimension = table.dimension;
    token.grapheme = span.grapheme;
    token.fidelity = d.value;
    token.collapsed = d.value < tau;
    token.low_confidence = d.low_confidence;
    token.span = span;
    out.push_back(std::move(token));
  }
  return out;
}

double DurationContrast::Ratio() const {
  return (long_seconds / static_cast<double>(long_count)) /
         (short_seconds / static_cast<double>(short_count));
}

DurationContrast& DurationContrast::operator+=(const DurationContrast& other) {
  long_seconds += other.long_seconds;
  long_count += other.long_count;
  short_seconds += other.short_seconds;
  short_count += other.short_count;
  return *this;
}

DurationContrast CollectDurations(std::span<const AlignmentSpan> spans,
                                  const DimensionTable& table, double frame_hop_ms) {
  DurationContrast c;
  for (const AlignmentSpan& span : spans) {
    const double seconds = span.frames() * frame_hop_ms / 1000.0;
    switch (ClassifyVowel(span.grapheme, table)) {
      case VowelKind::kLong:
        c.long_seconds += seconds;
        ++c.long_count;
        break;
      case VowelKind::kShort:
        c.short_seconds += seconds;
        ++c.short_count;
        break;
      case VowelKind::kNone:
        break;
    }
  }
  return c;
}

double LengthFidelityFromRatio(double system_ratio, double native_ratio) {
  if (!(native_ratio > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "native duration ratio must exceed 1");
  }
  return std::clamp((system_ratio - 1.0) / (native_ratio - 1.0), 0.0, 1.0);
}

std::optional<double> LengthFidelity(std::span<const AlignmentSpan> spans,
                                     const DimensionTable& table, double native_ratio,
                                     double frame_hop_ms) {
  const DurationContrast c = CollectDurations(spans, table, frame_hop_ms);
  if (!c.HasContrast()) return std::nullopt;
  return LengthFidelityFromRatio(c.Ratio(), native_ratio);
}

DimensionScore Aggregate(std::span<const TokenFidelity> tokens, AggregationLevel level) {
  if (tokens.empty()) throw Error(ErrorCode::kEmptyTokens, "no tokens to aggregate");
  DimensionScore score;
  score.dimension = tokens.front().dimension;
  double sum = 0.0;
  long collapsed = 0;
  for (const TokenFidelity& t : tokens) {
    if (t.dimension != score.dimension) {
      throw Error(ErrorCode::kInvalidArgument, "tokens mix dimensions");
    }
    if (level == AggregationLevel::kUtterance && t.utterance_id != tokens.front().utterance_id) {
      throw Error(ErrorCode::kInvalidArgument, "utterance-level tokens span utterances");
    }
    sum += t.fidelity;
    collapsed += t.collapsed ? 1 : 0;
  }
  // Weighting each utterance mean by its token count reduces to the pooled
  // mean, so both levels share the same arithmetic.
  score.n_tokens = static_cast<long>(tokens.size());
  score.mean_fidelity = sum / static_cast<double>(score.n_tokens);
  score.collapse_rate = static_cast<double>(collapsed) / static_cast<double>(score.n_tokens);
  return score;
}

double NormalizeFloor(double system_stat, double native_stat) {
  if (native_stat >= 1.0 - 1e-9) {
    throw Error(ErrorCode::kDegenerateFloor, "native floor is at ceiling");
  }
  return std::clamp((system_stat - native_stat) / (1.0 - native_stat), 0.0, 1.0);
}

}  // namespace psp
