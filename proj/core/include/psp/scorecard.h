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

#ifndef PSP_SCORECARD_H_
#define PSP_SCORECARD_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psp/bootstrap.h"
#include "psp/distributional.h"
#include "psp/phoneme_probes.h"
#include "psp/types.h"

namespace psp {

inline constexpr char kScorecardSchema[] = "psp_scorecard_v1";

enum class DimensionStatus { kOk, kNotApplicable, kError };

std::string_view DimensionStatusName(DimensionStatus status);

struct DimensionResult {
  DimensionStatus status = DimensionStatus::kOk;
  std::optional<DimensionScore> score;
  std::string note;
};

enum class ScorecardKind { kSystem, kNativeFloor };

struct ScoreSettings {
  double tau = kDefaultCollapseThreshold;
  double eps = kDefaultFrechetEpsilon;
  BootstrapConfig bootstrap;
  bool zscore_psd = false;
};

struct Scorecard {
  ScorecardKind kind = ScorecardKind::kSystem;
  std::string system;
  Language language = Language::kTelugu;
  // Applicable dimensions are always present; AF is kNotApplicable for
  // Tamil, and ZF is absent outside Tamil.
  std::map<Dimension, DimensionResult> per_dimension;
  std::optional<FrechetResult> fad;
  std::optional<FrechetResult> psd;
  std::string fad_note;
  std::string psd_note;
  int n_wavs = 0;
  int n_failed = 0;
  std::vector<std::string> failed_utterances;
  std::string config_fingerprint;
  ScoreSettings settings;
  std::optional<double> lf_native_ratio;
  std::vector<std::string> warnings;

  // Some utterances failed or some dimension is in error status.
  bool IsPartial() const;
};

// Stable JSON rendering: fixed key order, no timestamps, shortest
// round-trip floats.
std::string ScorecardToJson(const Scorecard& card);
Scorecard ScorecardFromJson(std::string_view json_text);
Scorecard ReadScorecard(const std::filesystem::path& path);
void WriteScorecard(const std::filesystem::path& path, const Scorecard& card);

// Human-readable table for one scorecard.
std::string RenderScorecardTable(const Scorecard& card);

// 64-bit FNV-1a, hex-encoded. Used for config fingerprints.
std::string Fnv1aHex(std::string_view data);

}  // namespace psp

#endif  // PSP_SCORECARD_H_
