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

#ifndef PSP_CENTROIDS_H_
#define PSP_CENTROIDS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psp/types.h"

namespace psp {

struct UtteranceBundle;
struct CorpusManifest;
struct DimensionTable;

struct SamplingOptions {
  int cap = kDefaultClipsPerSpeakerCap;
  int min_speakers = 0;
  std::uint64_t seed = 0;
  // Total clips to keep, spread round-robin across speakers. Unset keeps
  // every clip allowed by the cap.
  std::optional<int> target_total;
};

// Per-speaker sampling without replacement, at most `cap` clips each.
// Utterances without a speaker id are skipped. The result is sorted by id
// and depends only on the manifest contents and the seed.
// Throws Error(kTooFewSpeakers).
std::vector<std::string> SampleCorpus(const CorpusManifest& manifest,
                                      const SamplingOptions& options);

struct CentroidEntry {
  Dimension dimension = Dimension::kRR;
  std::string native_grapheme;
  std::string substitute_grapheme;
  Vector native_centroid;
  Vector substitute_centroid;
  long native_count = 0;      // frames in the native bag
  long substitute_count = 0;  // frames in the substitute bag
  // Utterances that contributed frames to each bag, sorted.
  std::vector<std::string> native_utterances;
  std::vector<std::string> substitute_utterances;
};

struct CentroidProvenance {
  std::string corpus_id;
  int speaker_count = 0;
  std::map<std::string, int> clips_per_speaker;
  std::vector<std::string> utterance_ids;  // sorted
  int min_speakers = 0;
  int cap = kDefaultClipsPerSpeakerCap;
  bool speaker_minimum_met = false;
  // Long/short vowel duration ratio measured on the corpus by forced
  // alignment. Used as the LF prior when the table config has none.
  std::optional<double> lf_native_ratio;
  long lf_long_tokens = 0;
  long lf_short_tokens = 0;
};

struct CentroidSet {
  Language language = Language::kTelugu;
  int embedding_dim = 0;
  std::vector<CentroidEntry> entries;
  CentroidProvenance provenance;
  std::vector<std::string> warnings;

  const CentroidEntry* Find(Dimension dimension, const std::string& native_grapheme) const;
};

struct CentroidBuildOptions {
  std::string corpus_id;
  int cap = kDefaultClipsPerSpeakerCap;
  // 0 selects DefaultMinSpeakers(language).
  int min_speakers = 0;
};

// Streams bundles into per-utterance bag sums so the full corpus never has to
// sit in memory. Frames are bagged by greedy CTC label: a frame joins the bag
// of grapheme g when its argmax label is g and g occurs in the utterance
// text. Substitute bags only draw on utterances that fed the matching native
// bag. Bag sums are merged in utterance-id order with pairwise summation, so
// the result does not depend on the order bundles arrive in.
class CentroidBuilder {
 public:
  CentroidBuilder(Language language, std::span<const DimensionTable> tables,
                  CentroidBuildOptions options = {});
  ~CentroidBuilder();
  CentroidBuilder(CentroidBuilder&&) noexcept;
  CentroidBuilder& operator=(CentroidBuilder&&) noexcept;

  // Throws kLanguageMismatch, kDimensionMismatch, kValidation, or
  // kCapExceeded when a speaker exceeds the per-speaker cap.
  void Add(const UtteranceBundle& bundle);

  // Entries with an empty native or substitute bag are omitted with a
  // warning.
  CentroidSet Finish() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

CentroidSet BuildCentroids(std::span<const UtteranceBundle> bundles,
                           std::span<const DimensionTable> tables,
                           CentroidBuildOptions options = {});

// Directory layout: index.json (format "psp_centroids_v1") plus
// entry_NNN_native.pspt / entry_NNN_substitute.pspt per entry.
void WriteCentroids(const std::filesystem::path& dir, const CentroidSet& set);
CentroidSet ReadCentroids(const std::filesystem::path& dir);

// Pairwise (cascade) summation of equally sized vectors in the given order.
Vector PairwiseSum(std::span<const Vector> parts, Eigen::Index dim);

}  // namespace psp

#endif  // PSP_CENTROIDS_H_
