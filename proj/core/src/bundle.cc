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

#include "psp/bundle.h"

#include <cmath>
#include <limits>

#include "json_util.h"
#include "psp/error.h"
#include "psp/tensor_file.h"
#include "psp/text_targets.h"

namespace psp {
namespace {

using internal::Get;
using internal::Json;

constexpr double kRowNormTolerance = 1e-3;

double LogSumExp(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  const double max = row.maxCoeff();
  if (!std::isfinite(max)) return max;
  return max + std::log((row.array() - max).exp().sum());
}

}  // namespace

std::vector<Violation> ValidateBundle(const UtteranceBundle& bundle) {
  std::vector<Violation> out;
  auto add = [&out](std::string field, std::string message) {
    out.push_back({std::move(field), std::move(message)});
  };

  if (bundle.id.empty()) add("id", "empty id");
  try {
    DecodeUtf8(bundle.text);
  } catch (const Error&) {
    add("text", "invalid UTF-8");
  }
  if (!(bundle.frame_hop_ms > 0.0) || !std::isfinite(bundle.frame_hop_ms)) {
    add("frame_hop_ms", "must be positive");
  }
  if (!(bundle.duration_s > 0.0) || !std::isfinite(bundle.duration_s)) {
    add("duration_s", "must be positive");
  }
  if (bundle.speaker_id && bundle.speaker_id->empty()) add("speaker_id", "empty speaker id");

  const Eigen::Index frames = bundle.emissions.rows();
  const Eigen::Index vocab_size = bundle.emissions.cols();
  if (frames == 0 || vocab_size == 0) add("emissions", "empty matrix");
  if (static_cast<Eigen::Index>(bundle.vocab.size()) != vocab_size) {
    add("vocab", "size does not match emission width");
  }
  if (bundle.blank_index < 0 || bundle.blank_index >= vocab_size) {
    add("blank_index", "out of range");
  }
  if (bundle.embeddings.rows() != frames) add("embeddings", "frame count mismatch");
  if (bundle.embeddings.cols() == 0) add("embeddings", "empty matrix");
  if (bundle.f0_hz.size() != frames) add("f0_hz", "frame count mismatch");

  // log-probabilities may be -inf, never NaN or +inf.
  if (bundle.emissions.array().isNaN().any() ||
      (bundle.emissions.array() == std::numeric_limits<double>::infinity()).any()) {
    add("emissions", "non-finite value");
  } else {
    for (Eigen::Index t = 0; t < frames; ++t) {
      if (std::abs(LogSumExp(bundle.emissions.row(t))) > kRowNormTolerance) {
        add("emissions", "row not normalized");
        break;
      }
    }
  }
  if (!bundle.embeddings.allFinite()) add("embeddings", "non-finite value");
  if (!bundle.f0_hz.allFinite()) {
    add("f0_hz", "non-finite value");
  } else if (bundle.f0_hz.size() > 0 && bundle.f0_hz.minCoeff() < 0.0) {
    add("f0_hz", "negative value");
  }
  return out;
}

UtteranceBundle ReadBundle(const std::filesystem::path& dir) {
  const Json manifest = internal::ReadJsonFile(dir / kBundleManifestName);
  const std::string what = (dir / kBundleManifestName).string();
  UtteranceBundle b;
  b.id = Get<std::string>(manifest, "id", what);
  b.language = ParseLanguage(Get<std::string>(manifest, "language", what));
  b.text = Get<std::string>(manifest, "text", what);
  b.frame_hop_ms = manifest.value("frame_hop_ms", kDefaultFrameHopMs);
  b.vocab = Get<std::vector<std::string>>(manifest, "vocab", what);
  b.blank_index = Get<int>(manifest, "blank_index", what);
  b.duration_s = Get<double>(manifest, "duration_s", what);
  if (auto it = manifest.find("speaker_id"); it != manifest.end() && !it->is_null()) {
    b.speaker_id = it->get<std::string>();
  }
  b.emissions = ToMatrix(ReadTensor(dir / kEmissionsFileName));
  b.embeddings = ToMatrix(ReadTensor(dir / kEmbeddingsFileName));
  b.f0_hz = ToVector(ReadTensor(dir / kF0FileName));
  return b;
}

void WriteBundle(const std::filesystem::path& dir, const UtteranceBundle& bundle) {
  std::filesystem::create_directories(dir);
  Json manifest;
  manifest["format"] = "psp_bundle_v1";
  manifest["id"] = bundle.id;
  manifest["language"] = LanguageCode(bundle.language);
  manifest["text"] = bundle.text;
  manifest["frame_hop_ms"] = bundle.frame_hop_ms;
  manifest["duration_s"] = bundle.duration_s;
  manifest["blank_index"] = bundle.blank_index;
  manifest["vocab"] = bundle.vocab;
  if (bundle.speaker_id) manifest["speaker_id"] = *bundle.speaker_id;
  internal::WriteJsonFile(dir / kBundleManifestName, manifest);
  WriteTensor(dir / kEmissionsFileName, FromMatrix(bundle.emissions));
  WriteTensor(dir / kEmbeddingsFileName, FromMatrix(bundle.embeddings));
  WriteTensor(dir / kF0FileName, FromVector(bundle.f0_hz));
}

CorpusManifest ReadCorpusManifest(const std::filesystem::path& corpus_dir) {
  const Json json = internal::ReadJsonFile(corpus_dir / kCorpusManifestName);
  const std::string what = (corpus_dir / kCorpusManifestName).string();
  CorpusManifest m;
  m.corpus_id = json.value("corpus_id", corpus_dir.filename().string());
  if (auto it = json.find("language"); it != json.end() && !it->is_null()) {
    m.language = ParseLanguage(it->get<std::string>());
  }
  for (const Json& row : Get<Json>(json, "utterances", what)) {
    CorpusEntry entry;
    entry.id = Get<std::string>(row, "id", what);
    entry.path = row.value("path", entry.id);
    if (auto it = row.find("speaker_id"); it != row.end() && !it->is_null()) {
      entry.speaker_id = it->get<std::string>();
    }
    m.utterances.push_back(std::move(entry));
  }
  return m;
}

void WriteCorpusManifest(const std::filesystem::path& corpus_dir,
                         const CorpusManifest& manifest) {
  std::filesystem::create_directories(corpus_dir);
  Json json;
  json["format"] = "psp_corpus_v1";
  json["corpus_id"] = manifest.corpus_id;
  if (manifest.language) json["language"] = LanguageCode(*manifest.language);
  Json rows = Json::array();
  for (const CorpusEntry& e : manifest.utterances) {
    Json row;
    row["id"] = e.id;
    row["path"] = e.path;
    if (e.speaker_id) row["speaker_id"] = *e.speaker_id;
    rows.push_back(std::move(row));
  }
  json["utterances"] = std::move(rows);
  internal::WriteJsonFile(corpus_dir / kCorpusManifestName, json);
}

void WriteCorpus(const std::filesystem::path& corpus_dir, const std::string& corpus_id,
                 const std::vector<UtteranceBundle>& bundles) {
  CorpusManifest manifest;
  manifest.corpus_id = corpus_id;
  if (!bundles.empty()) manifest.language = bundles.front().language;
  for (const UtteranceBundle& b : bundles) {
    WriteBundle(corpus_dir / b.id, b);
    manifest.utterances.push_back({b.id, b.id, b.speaker_id});
  }
  WriteCorpusManifest(corpus_dir, manifest);
}

}  // namespace psp
