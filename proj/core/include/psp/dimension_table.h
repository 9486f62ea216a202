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

#ifndef PSP_DIMENSION_TABLE_H_
#define PSP_DIMENSION_TABLE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psp/types.h"

namespace psp {

// Native graphemes for one (language, dimension) and the substitute each one
// collapses to.
struct DimensionTable {
  Language language = Language::kTelugu;
  Dimension dimension = Dimension::kRR;
  std::vector<std::string> native_graphemes;
  std::vector<std::string> substitute_graphemes;
  std::map<std::string, std::string> cognate_map;

  bool IsNative(std::string_view grapheme) const;
  bool IsSubstitute(std::string_view grapheme) const;
};

struct DimensionConfig {
  int version = 1;
  std::vector<DimensionTable> tables;
  // Native long/short vowel duration prior, when the config pins one.
  std::map<Language, double> lf_native_ratio;
  // Raw config text, hashed into scorecard fingerprints.
  std::string source_text;

  std::vector<const DimensionTable*> TablesFor(Language language) const;
  const DimensionTable* Find(Language language, Dimension dimension) const;
};

// Parses the YAML table config. Schema:
//
//   version: 1
//   languages:
//     te:
//       lf_native_ratio: 1.9        # optional
//       dimensions:
//         RR:
//           native: [ట, డ, ...]
//           substitute: [త, ద, ...]
//           cognates: {ట: త, డ: ద, ...}
//
// Throws Error with kUnknownLanguage, kOverlappingSets, kMissingCognate,
// kNotApplicable (AF for Tamil, ZF outside Tamil) or kParse.
DimensionConfig ParseDimensionConfig(std::string_view yaml_text);
DimensionConfig LoadDimensionConfig(const std::filesystem::path& path);
std::vector<DimensionTable> LoadDimensionTables(const std::filesystem::path& path);

// Graphemes named by the tables for `language` that the aligner vocab cannot
// emit. Returned as warnings; such graphemes can never be scored.
std::vector<std::string> ReconcileVocab(const std::vector<std::string>& vocab,
                                        const DimensionConfig& config,
                                        Language language);

}  // namespace psp

#endif  // PSP_DIMENSION_TABLE_H_
