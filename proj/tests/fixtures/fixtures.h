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

#ifndef PSP_TESTS_FIXTURES_H_
#define PSP_TESTS_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "psp/psp.h"

namespace psp::fixtures {

inline constexpr int kEmbeddingDim = 40;
inline constexpr char kBlank[] = "<blank>";

// The dimension tables shipped in data/.
const DimensionConfig& Tables();

// Blank at index 0, then every grapheme named by the language's tables, then
// a few filler consonants.
std::vector<std::string> Vocab(Language language);
std::vector<std::string> Fillers(Language language);
int IndexOf(const std::vector<std::string>& vocab, const std::string& grapheme);

// Unit vector e_k in kEmbeddingDim dimensions.
Vector Basis(int k);
// Direction used for blank frames and fillers; orthogonal to every centroid.
Vector BlankDirection();

// Log-softmaxed emissions that put probability p on each frame's label and
// spread the rest evenly.
Matrix PlantedEmissions(const std::vector<int>& frame_labels, int vocab_size, double p = 0.9);

struct Token {
  std::string grapheme;
  int frames = 2;
  Vector embedding;  // empty: BlankDirection()
};

// One blank frame, then each token followed by one blank frame. The text is
// the concatenation of the graphemes. F0 is voiced everywhere and varies by
// `f0_seed`.
UtteranceBundle PlantedBundle(const std::string& id, Language language,
                              const std::vector<Token>& tokens, std::uint64_t f0_seed = 0,
                              double p = 0.9);

// Native centroid Basis(2k), substitute Basis(2k + 1) for the k-th native
// grapheme over every probe dimension of the language (LF excluded).
CentroidSet OrthogonalCentroids(Language language);

// Scoring fixture: `utterances` bundles, each with `rr_tokens` RR tokens
// whose embedding sits at the substitute centroid with probability
// `p_collapse` and at the native centroid otherwise, one RR substitute
// grapheme at its substitute centroid, one AF or ZF token at its native
// centroid, one long and one short vowel, and filler consonants.
// The centroids are OrthogonalCentroids with an LF prior of 1.9; the bank is
// built from the same bundles.
struct World {
  Language language = Language::kTelugu;
  std::vector<UtteranceBundle> bundles;
  CentroidSet centroids;
  ReferenceBank bank;
  long planted_rr_collapses = 0;
};

World PlantedWorld(Language language, int utterances, int rr_tokens, double p_collapse,
                   std::uint64_t seed);

// A fresh empty directory under the system temp dir.
std::filesystem::path TempDir(const std::string& name);

}  // namespace psp::fixtures

#endif  // PSP_TESTS_FIXTURES_H_
