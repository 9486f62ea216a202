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

#ifndef PSP_SCORING_H_
#define PSP_SCORING_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psp/distributional.h"
#include "psp/phoneme_probes.h"
#include "psp/scorecard.h"
#include "psp/types.h"

namespace psp {

struct UtteranceBundle;
struct CentroidSet;
struct ReferenceBank;
struct DimensionConfig;

struct ScoreOptions {
  ScoreSettings settings;
  int threads = 1;
  // Noise-floor scorecard for the same language; enables normalized values.
  std::optional<Scorecard> floor;
  // Keep per-utterance results for audit dumps.
  bool keep_utterance_results = false;
};

// Everything computed for one utterance before corpus aggregation.
struct UtteranceResult {
  std::string id;
  bool ok = false;
  std::string error;
  std::vector<std::string> warnings;
  std::map<Dimension, std::vector<TokenFidelity>> tokens;
  DurationContrast durations;
  Vector embedding;
  std::optional<ProsodicVector> prosody;
};

std::string UtteranceResultToJson(const UtteranceResult& result);

struct CorpusScore {
  Scorecard card;
  std::vector<UtteranceResult> utterances;  // only with keep_utterance_results
};

// Supplies bundle i of n; may throw, in which case the utterance is recorded
// as failed.
using BundleLoader = std::function<UtteranceBundle(std::size_t)>;

// Scores a corpus: forced alignment, per-phoneme probes, corpus aggregation
// with bootstrap intervals, and FAD/PSD against the reference bank.
// Utterances are processed in parallel and folded in id order, so the
// scorecard does not depend on `threads`.
CorpusScore ScoreCorpus(std::size_t n_bundles, const BundleLoader& load,
                        const std::string& system, Language language,
                        const CentroidSet& centroids, const ReferenceBank& bank,
                        const DimensionConfig& tables, const ScoreOptions& options);

CorpusScore ScoreCorpus(std::span<const UtteranceBundle> bundles, const std::string& system,
                        Language language, const CentroidSet& centroids,
                        const ReferenceBank& bank, const DimensionConfig& tables,
                        const ScoreOptions& options);

// Throws Error(kOverlapWithCentroidCorpus) if any held-out id was used to
// build the centroids.
void CheckHeldOutDisjoint(std::span<const std::string> held_out_ids,
                          const CentroidSet& centroids);

// Scores held-out native audio and tags the result as the language's noise
// floor. Checks disjointness first.
CorpusScore RunSanity(std::size_t n_bundles, const BundleLoader& load,
                      std::span<const std::string> held_out_ids, Language language,
                      const CentroidSet& centroids, const ReferenceBank& bank,
                      const DimensionConfig& tables, const ScoreOptions& options);

// Hash of centroid content, table config, tau, eps and bootstrap settings.
std::string ConfigFingerprint(const CentroidSet& centroids, const DimensionConfig& tables,
                              const ScoreSettings& settings);

}  // namespace psp

#endif  // PSP_SCORING_H_
