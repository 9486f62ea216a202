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

#ifndef PSP_REFERENCE_BANK_H_
#define PSP_REFERENCE_BANK_H_

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "psp/types.h"

namespace psp {

struct UtteranceBundle;

// Native reference distributions for the corpus-level metrics.
struct ReferenceBank {
  Language language = Language::kTelugu;
  Matrix utterance_embeddings;  // N x D
  Matrix prosodic;              // M x 5
  std::vector<std::string> embedding_ids;
  std::vector<std::string> prosodic_ids;
  std::string source;
  std::vector<std::string> warnings;
};

// Mean frame embedding, skipping frames whose greedy label is blank. An
// utterance that is blank at every frame falls back to all frames.
Vector UtteranceEmbedding(const UtteranceBundle& bundle);

struct ReferenceBankOptions {
  std::string source;
  // Caps on rows kept (first come, in Add order). 0 keeps everything.
  int max_embeddings = 1000;
  int max_prosodic = 500;
};

class ReferenceBankBuilder {
 public:
  ReferenceBankBuilder(Language language, ReferenceBankOptions options = {});

  // Utterances whose prosody cannot be computed (no voiced frames, too few
  // aligned graphemes) still contribute an embedding row; a warning is kept.
  void Add(const UtteranceBundle& bundle);

  // Throws Error(kTooFewSamples) when either matrix has fewer than 2 rows.
  ReferenceBank Finish() const;

 private:
  Language language_;
  ReferenceBankOptions options_;
  std::vector<std::pair<std::string, Vector>> embeddings_;
  std::vector<std::pair<std::string, Vector>> prosodic_;
  std::vector<std::string> warnings_;
};

ReferenceBank BuildReferenceBank(std::span<const UtteranceBundle> bundles,
                                 ReferenceBankOptions options = {});

// Directory layout: index.json (format "psp_bank_v1"), embeddings.pspt,
// prosody.pspt.
void WriteReferenceBank(const std::filesystem::path& dir, const ReferenceBank& bank);
ReferenceBank ReadReferenceBank(const std::filesystem::path& dir);

}  // namespace psp

#endif  // PSP_REFERENCE_BANK_H_
