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

#ifndef PSP_TYPES_H_
#define PSP_TYPES_H_

#include <array>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace psp {

// Row-major so that a frame (emission row, embedding row) is contiguous and
// matches the on-disk tensor layout.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class Language { kTelugu, kHindi, kTamil };

inline constexpr std::array<Language, 3> kAllLanguages = {
    Language::kTelugu, Language::kHindi, Language::kTamil};

// ISO 639-1 codes: "te", "hi", "ta".
std::string_view LanguageCode(Language language);
// Throws Error(kUnknownLanguage).
Language ParseLanguage(std::string_view code);

// Per-phoneme dimensions. FAD and PSD are corpus-level and are not
// table-driven, so they live in the scorecard rather than here.
enum class Dimension { kRR, kAF, kLF, kZF };

inline constexpr std::array<Dimension, 4> kAllDimensions = {
    Dimension::kRR, Dimension::kAF, Dimension::kLF, Dimension::kZF};

std::string_view DimensionName(Dimension dimension);
// Throws Error(kParse).
Dimension ParseDimension(std::string_view name);

// Aspiration does not apply to Tamil; zha applies to Tamil only.
bool IsApplicable(Language language, Dimension dimension);

// Minimum distinct speakers for a centroid corpus: 20 for te/ta, 40 for hi.
int DefaultMinSpeakers(Language language);

inline constexpr int kDefaultClipsPerSpeakerCap = 25;
inline constexpr double kDefaultCollapseThreshold = 0.5;
inline constexpr double kDefaultFrechetEpsilon = 1e-6;
inline constexpr double kDefaultFrameHopMs = 20.0;

}  // namespace psp

#endif  // PSP_TYPES_H_
