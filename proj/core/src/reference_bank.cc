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

#include "psp/reference_bank.h"

#include "json_util.h"
#include "psp/bundle.h"
#include "psp/ctc_align.h"
#include "psp/distributional.h"
#include "psp/error.h"
#include "psp/tensor_file.h"
#include "psp/text_targets.h"

namespace psp {
namespace {

using internal::Get;
using internal::Json;

Matrix StackRows(const std::vector<std::pair<std::string, Vector>>& rows, Eigen::Index cols) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = rows[i].second.transpose();
  }
  return m;
}

}  // namespace

Vector UtteranceEmbedding(const UtteranceBundle& bundle) {
  const std::vector<int> labels = GreedyFrames(bundle.emissions);
  Vector sum = Vector::Zero(bundle.embeddings.cols());
  long count = 0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (labels[t] == bundle.blank_index) continue;
    sum += bundle.embeddings.row(static_cast<Eigen::Index>(t)).transpose();
    ++count;
  }
  if (count == 0) return bundle.embeddings.colwise().mean().transpose();
  return sum / static_cast<double>(count);
}

ReferenceBankBuilder::ReferenceBankBuilder(Language language, ReferenceBankOptions options)
    : language_(language), options_(std::move(options)) {}

void ReferenceBankBuilder::Add(const UtteranceBundle& bundle) {
  if (bundle.language != language_) {
    throw Error(ErrorCode::kLanguageMismatch, bundle.id + ": language " +
                                                  std::string(LanguageCode(bundle.language)));
  }
  if (const auto violations = ValidateBundle(bundle); !violations.empty()) {
    throw Error(ErrorCode::kValidation, bundle.id + ": " + violations.front().ToString());
  }
  if (!embeddings_.empty() && embeddings_.front().second.size() != bundle.embeddings.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, bundle.id + ": embedding width differs");
  }
  const bool want_embedding =
      options_.max_embeddings <= 0 || static_cast<int>(embeddings_.size()) < options_.max_embeddings;
  const bool want_prosody =
      options_.max_prosodic <= 0 || static_cast<int>(prosodic_.size()) < options_.max_prosodic;
  if (want_embedding) embeddings_.emplace_back(bundle.id, UtteranceEmbedding(bundle));
  if (!want_prosody) return;
  try {
    const TargetSequence targets = TextToTargets(bundle.text, bundle.vocab, bundle.blank_index);
    const Alignment alignment = AlignBundle(bundle, targets);
    prosodic_.emplace_back(bundle.id,
                           ComputeProsodicVector(bundle, alignment.spans).AsRow().transpose());
  } catch (const Error& e) {
    warnings_.push_back(bundle.id + ": no prosodic row: " + e.what());
  }
}

ReferenceBank ReferenceBankBuilder::Finish() const {
  if (embeddings_.size() < 2 || prosodic_.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                "reference bank needs at least 2 embedding and 2 prosodic rows (have " +
                    std::to_string(embeddings_.size()) + " and " +
                    std::to_string(prosodic_.size()) + ")");
  }
  ReferenceBank bank;
  bank.language = language_;
  bank.source = options_.source;
  bank.utterance_embeddings = StackRows(embeddings_, embeddings_.front().second.size());
  bank.prosodic = StackRows(prosodic_, kProsodicDims);
  for (const auto& [id, v] : embeddings_) bank.embedding_ids.push_back(id);
  for (const auto& [id, v] : prosodic_) bank.prosodic_ids.push_back(id);
  bank.warnings = warnings_;
  return bank;
}

ReferenceBank BuildReferenceBank(std::span<const UtteranceBundle> bundles,
                                 ReferenceBankOptions options) {
  if (bundles.empty()) throw Error(ErrorCode::kTooFewSamples, "no bundles");
  ReferenceBankBuilder builder(bundles.front().language, std::move(options));
  for (const UtteranceBundle& b : bundles) builder.Add(b);
  return builder.Finish();
}

void WriteReferenceBank(const std::filesystem::path& dir, const ReferenceBank& bank) {
  std::filesystem::create_directories(dir);
  WriteTensor(dir / "embeddings.pspt", FromMatrix(bank.utterance_embeddings));
  WriteTensor(dir / "prosody.pspt", FromMatrix(bank.prosodic));
  Json index;
  index["format"] = "psp_bank_v1";
  index["language"] = LanguageCode(bank.language);
  index["source"] = bank.source;
  index["embedding_ids"] = bank.embedding_ids;
  index["prosodic_ids"] = bank.prosodic_ids;
  index["prosodic_columns"] = {"pitch_range", "logf0_mean", "speech_rate", "npvi",
                               "log_duration"};
  index["warnings"] = bank.warnings;
  internal::WriteJsonFile(dir / "index.json", index);
}

ReferenceBank ReadReferenceBank(const std::filesystem::path& dir) {
  const Json index = internal::ReadJsonFile(dir / "index.json");
  const std::string what = (dir / "index.json").string();
  ReferenceBank bank;
  bank.language = ParseLanguage(Get<std::string>(index, "language", what));
  bank.source = index.value("source", std::string());
  bank.embedding_ids = index.value("embedding_ids", std::vector<std::string>{});
  bank.prosodic_ids = index.value("prosodic_ids", std::vector<std::string>{});
  bank.warnings = index.value("warnings", std::vector<std::string>{});
  bank.utterance_embeddings = ToMatrix(ReadTensor(dir / "embeddings.pspt"));
  bank.prosodic = ToMatrix(ReadTensor(dir / "prosody.pspt"));
  if (bank.prosodic.cols() != kProsodicDims) {
    throw Error(ErrorCode::kDimensionMismatch, what + ": prosody matrix must have 5 columns");
  }
  if (bank.utterance_embeddings.rows() < 2 || bank.prosodic.rows() < 2) {
    throw Error(ErrorCode::kTooFewSamples, what + ": bank needs at least 2 rows per matrix");
  }
  return bank;
}

}  // namespace psp
