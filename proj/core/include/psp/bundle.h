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

#ifndef PSP_BUNDLE_H_
#define PSP_BUNDLE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "psp/types.h"

namespace psp {

// One utterance ready for scoring. Produced by the extractor, consumed by
// everything else.
struct UtteranceBundle {
  std::string id;
  Language language = Language::kTelugu;
  std::string text;  // UTF-8, native script
  double frame_hop_ms = kDefaultFrameHopMs;
  Matrix emissions;   // T x V log-probabilities
  Matrix embeddings;  // T x D frame embeddings
  Vector f0_hz;       // T, 0 at unvoiced frames
  std::vector<std::string> vocab;  // V entries, blank included
  int blank_index = 0;
  double duration_s = 0.0;
  std::optional<std::string> speaker_id;

  int frames() const { return static_cast<int>(emissions.rows()); }
};

struct Violation {
  std::string field;
  std::string message;

  std::string ToString() const { return field + ": " + message; }
  bool operator==(const Violation&) const = default;
};

// Checks every bundle invariant. An empty result means the bundle is valid.
// Violations come out in a fixed field order independent of content.
std::vector<Violation> ValidateBundle(const UtteranceBundle& bundle);

// Bundle directory layout:
//   manifest.json    metadata (format "psp_bundle_v1")
//   emissions.pspt   T x V
//   embeddings.pspt  T x D
//   f0.pspt          T
inline constexpr char kBundleManifestName[] = "manifest.json";
inline constexpr char kEmissionsFileName[] = "emissions.pspt";
inline constexpr char kEmbeddingsFileName[] = "embeddings.pspt";
inline constexpr char kF0FileName[] = "f0.pspt";

UtteranceBundle ReadBundle(const std::filesystem::path& dir);
void WriteBundle(const std::filesystem::path& dir, const UtteranceBundle& bundle);

struct CorpusEntry {
  std::string id;
  std::string path;  // bundle directory, relative to the corpus root
  std::optional<std::string> speaker_id;
};

// corpus.json at the corpus root (format "psp_corpus_v1").
struct CorpusManifest {
  std::string corpus_id;
  std::optional<Language> language;
  std::vector<CorpusEntry> utterances;
};

inline constexpr char kCorpusManifestName[] = "corpus.json";

CorpusManifest ReadCorpusManifest(const std::filesystem::path& corpus_dir);
void WriteCorpusManifest(const std::filesystem::path& corpus_dir,
                         const CorpusManifest& manifest);

// Writes each bundle into corpus_dir/<id>/ and a matching corpus.json.
void WriteCorpus(const std::filesystem::path& corpus_dir, const std::string& corpus_id,
                 const std::vector<UtteranceBundle>& bundles);

}  // namespace psp

#endif  // PSP_BUNDLE_H_
