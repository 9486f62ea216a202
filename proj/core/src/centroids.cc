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

#include "psp/centroids.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>

#include "json_util.h"
#include "psp/bootstrap.h"
#include "psp/bundle.h"
#include "psp/ctc_align.h"
#include "psp/dimension_table.h"
#include "psp/error.h"
#include "psp/phoneme_probes.h"
#include "psp/tensor_file.h"
#include "psp/text_targets.h"

namespace psp {
namespace {

using internal::Get;
using internal::Json;

constexpr char kUnknownSpeaker[] = "<unknown>";

std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct BagSum {
  Vector sum;
  long count = 0;
};

struct UtterancePartial {
  std::string id;
  std::string speaker;
  std::map<int, BagSum> native;      // keyed by entry index
  std::map<int, BagSum> substitute;
  DurationContrast lf;
};

struct EntrySpec {
  Dimension dimension;
  std::string native;
  std::string substitute;
};

}  // namespace

Vector PairwiseSum(std::span<const Vector> parts, Eigen::Index dim) {
  if (parts.empty()) return Vector::Zero(dim);
  if (parts.size() == 1) return parts.front();
  const std::size_t half = parts.size() / 2;
  return PairwiseSum(parts.first(half), dim) + PairwiseSum(parts.subspan(half), dim);
}

std::vector<std::string> SampleCorpus(const CorpusManifest& manifest,
                                      const SamplingOptions& options) {
  if (options.cap < 1) throw Error(ErrorCode::kInvalidArgument, "cap must be positive");
  std::map<std::string, std::vector<std::string>> by_speaker;
  for (const CorpusEntry& e : manifest.utterances) {
    if (e.speaker_id) by_speaker[*e.speaker_id].push_back(e.id);
  }
  if (static_cast<int>(by_speaker.size()) < options.min_speakers) {
    throw Error(ErrorCode::kTooFewSpeakers,
                std::to_string(by_speaker.size()) + " speakers, need " +
                    std::to_string(options.min_speakers));
  }

  // Each speaker's clips in a seeded order; stream keyed by speaker id so one
  // speaker's draw does not depend on who else is in the corpus.
  std::vector<std::vector<std::string>> pools;
  for (auto& [speaker, ids] : by_speaker) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::mt19937_64 rng = MakeStream(options.seed, HashString(speaker));
    PortableShuffle(ids, rng);
    if (static_cast<int>(ids.size()) > options.cap) ids.resize(options.cap);
    pools.push_back(std::move(ids));
  }

  std::vector<std::string> out;
  if (!options.target_total) {
    for (const auto& pool : pools) out.insert(out.end(), pool.begin(), pool.end());
  } else {
    // Round-robin keeps the per-speaker counts within one of each other.
    const auto total = static_cast<std::size_t>(std::max(0, *options.target_total));
    for (std::size_t round = 0; out.size() < total; ++round) {
      bool any = false;
      for (const auto& pool : pools) {
        if (round < pool.size() && out.size() < total) {
          out.push_back(pool[round]);
          any = true;
        }
      }
      if (!any) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const CentroidEntry* CentroidSet::Find(Dimension dimension,
                                       const std::string& native_grapheme) const {
  for (const CentroidEntry& e : entries) {
    if (e.dimension == dimension && e.native_grapheme == native_grapheme) return &e;
  }
  return nullptr;
}

struct CentroidBuilder::State {
  Language language;
  CentroidBuildOptions options;
  std::vector<DimensionTable> tables;
  std::vector<EntrySpec> specs;
  const DimensionTable* lf_table = nullptr;
  Eigen::Index dim = -1;
  std::vector<UtterancePartial> partials;
  std::set<std::string> ids;
  std::map<std::string, int> clips_per_speaker;
  std::vector<std::string> warnings;
};

CentroidBuilder::CentroidBuilder(Language language, std::span<const DimensionTable> tables,
                                 CentroidBuildOptions options)
    : state_(std::make_unique<State>()) {
  state_->language = language;
  state_->options = std::move(options);
  if (state_->options.min_speakers <= 0) {
    state_->options.min_speakers = DefaultMinSpeakers(language);
  }
  for (const DimensionTable& t : tables) {
    if (t.language == language) state_->tables.push_back(t);
  }
  for (const DimensionTable& t : state_->tables) {
    if (t.dimension == Dimension::kLF) state_->lf_table = &t;
    for (const std::string& g : t.native_graphemes) {
      state_->specs.push_back({t.dimension, g, t.cognate_map.at(g)});
    }
  }
}

CentroidBuilder::~CentroidBuilder() = default;
CentroidBuilder::CentroidBuilder(CentroidBuilder&&) noexcept = default;
CentroidBuilder& CentroidBuilder::operator=(CentroidBuilder&&) noexcept = default;

void CentroidBuilder::Add(const UtteranceBundle& bundle) {
  State& s = *state_;
  if (bundle.language != s.language) {
    throw Error(ErrorCode::kLanguageMismatch, bundle.id + ": language " +
                                                  std::string(LanguageCode(bundle.language)));
  }
  if (const auto violations = ValidateBundle(bundle); !violations.empty()) {
    throw Error(ErrorCode::kValidation, bundle.id + ": " + violations.front().ToString());
  }
  if (s.dim < 0) s.dim = bundle.embeddings.cols();
  if (bundle.embeddings.cols() != s.dim) {
    throw Error(ErrorCode::kDimensionMismatch, bundle.id + ": embedding width differs");
  }
  if (!s.ids.insert(bundle.id).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate utterance id " + bundle.id);
  }
  const std::string speaker = bundle.speaker_id.value_or(kUnknownSpeaker);
  if (++s.clips_per_speaker[speaker] > s.options.cap) {
    throw Error(ErrorCode::kCapExceeded, "speaker " + speaker + " exceeds " +
                                             std::to_string(s.options.cap) + " clips");
  }

  std::unordered_map<std::string, int> vocab_index;
  for (int i = 0; i < static_cast<int>(bundle.vocab.size()); ++i) {
    if (i != bundle.blank_index) vocab_index.emplace(bundle.vocab[i], i);
  }
  const std::vector<int> labels = GreedyFrames(bundle.emissions);
  auto bag = [&](const std::string& grapheme) -> std::optional<BagSum> {
    auto it = vocab_index.find(grapheme);
    if (it == vocab_index.end() || bundle.text.find(grapheme) == std::string::npos) {
      return std::nullopt;
    }
    BagSum b{Vector::Zero(s.dim), 0};
    for (std::size_t t = 0; t < labels.size(); ++t) {
      if (labels[t] == it->second) {
        b.sum += bundle.embeddings.row(static_cast<Eigen::Index>(t)).transpose();
        ++b.count;
      }
    }
    if (b.count == 0) return std::nullopt;
    return b;
  };

  UtterancePartial partial;
  partial.id = bundle.id;
  partial.speaker = speaker;
  for (int e = 0; e < static_cast<int>(s.specs.size()); ++e) {
    std::optional<BagSum> native = bag(s.specs[e].native);
    if (!native) continue;
    partial.native.emplace(e, std::move(*native));
    if (std::optional<BagSum> sub = bag(s.specs[e].substitute)) {
      partial.substitute.emplace(e, std::move(*sub));
    }
  }

  if (s.lf_table != nullptr) {
    const TargetSequence targets = TextToTargets(bundle.text, bundle.vocab, bundle.blank_index);
    if (!targets.labels.empty()) {
      try {
        const Alignment alignment = AlignBundle(bundle, targets);
        partial.lf = CollectDurations(alignment.spans, *s.lf_table, bundle.frame_hop_ms);
      } catch (const Error& err) {
        s.warnings.push_back(bundle.id + ": LF alignment skipped: " + err.what());
      }
    }
  }
  s.partials.push_back(std::move(partial));
}

CentroidSet CentroidBuilder::Finish() const {
  const State& s = *state_;
  std::vector<const UtterancePartial*> ordered;
  for (const UtterancePartial& p : s.partials) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });

  CentroidSet set;
  set.language = s.language;
  set.embedding_dim = static_cast<int>(std::max<Eigen::Index>(s.dim, 0));
  set.warnings = s.warnings;

  for (int e = 0; e < static_cast<int>(s.specs.size()); ++e) {
    const EntrySpec& spec = s.specs[e];
    CentroidEntry entry;
    entry.dimension = spec.dimension;
    entry.native_grapheme = spec.native;
    entry.substitute_grapheme = spec.substitute;
    std::vector<Vector> native_parts;
    std::vector<Vector> sub_parts;
    for (const UtterancePartial* p : ordered) {
      if (auto it = p->native.find(e); it != p->native.end()) {
        native_parts.push_back(it->second.sum);
        entry.native_count += it->second.count;
        entry.native_utterances.push_back(p->id);
      }
      if (auto it = p->substitute.find(e); it != p->substitute.end()) {
        sub_parts.push_back(it->second.sum);
        entry.substitute_count += it->second.count;
        entry.substitute_utterances.push_back(p->id);
      }
    }
    const std::string label =
        std::string(DimensionName(spec.dimension)) + " '" + spec.native + "'/'" + spec.substitute + "'";
    if (entry.native_count == 0 || entry.substitute_count == 0) {
      set.warnings.push_back("EmptyBag: " + label + " (native " +
                             std::to_string(entry.native_count) + ", substitute " +
                             std::to_string(entry.substitute_count) + " frames), entry omitted");
      continue;
    }
    entry.native_centroid = PairwiseSum(native_parts, s.dim) / static_cast<double>(entry.native_count);
    entry.substitute_centroid =
        PairwiseSum(sub_parts, s.dim) / static_cast<double>(entry.substitute_count);
    set.entries.push_back(std::move(entry));
  }

  CentroidProvenance& prov = set.provenance;
  prov.corpus_id = s.options.corpus_id;
  prov.clips_per_speaker = s.clips_per_speaker;
  prov.speaker_count = static_cast<int>(s.clips_per_speaker.size());
  prov.min_speakers = s.options.min_speakers;
  prov.cap = s.options.cap;
  prov.speaker_minimum_met = prov.speaker_count >= prov.min_speakers;
  if (!prov.speaker_minimum_met) {
    set.warnings.push_back("corpus has " + std::to_string(prov.speaker_count) +
                           " speakers, below the minimum of " +
                           std::to_string(prov.min_speakers));
  }
  DurationContrast lf;
  for (const UtterancePartial* p : ordered) {
    prov.utterance_ids.push_back(p->id);
    lf += p->lf;
  }
  prov.lf_long_tokens = lf.long_count;
  prov.lf_short_tokens = lf.short_count;
  if (lf.HasContrast()) prov.lf_native_ratio = lf.Ratio();
  return set;
}

CentroidSet BuildCentroids(std::span<const UtteranceBundle> bundles,
                           std::span<const DimensionTable> tables, CentroidBuildOptions options) {
  if (bundles.empty()) throw Error(ErrorCode::kEmptyInput, "no bundles");
  CentroidBuilder builder(bundles.front().language, tables, std::move(options));
  for (const UtteranceBundle& b : bundles) builder.Add(b);
  return builder.Finish();
}

void WriteCentroids(const std::filesystem::path& dir, const CentroidSet& set) {
  std::filesystem::create_directories(dir);
  Json index;
  index["format"] = "psp_centroids_v1";
  index["language"] = LanguageCode(set.language);
  index["embedding_dim"] = set.embedding_dim;
  Json entries = Json::array();
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    const CentroidEntry& e = set.entries[i];
    char stem[32];
    std::snprintf(stem, sizeof(stem), "entry_%03zu", i);
    const std::string native_file = std::string(stem) + "_native.pspt";
    const std::string sub_file = std::string(stem) + "_substitute.pspt";
    WriteTensor(dir / native_file, FromVector(e.native_centroid));
    WriteTensor(dir / sub_file, FromVector(e.substitute_centroid));
    Json j;
    j["dimension"] = DimensionName(e.dimension);
    j["native"] = e.native_grapheme;
    j["substitute"] = e.substitute_grapheme;
    j["native_file"] = native_file;
    j["substitute_file"] = sub_file;
    j["native_count"] = e.native_count;
    j["substitute_count"] = e.substitute_count;
    j["native_utterances"] = e.native_utterances;
    j["substitute_utterances"] = e.substitute_utterances;
    entries.push_back(std::move(j));
  }
  index["entries"] = std::move(entries);

  const CentroidProvenance& p = set.provenance;
  Json prov;
  prov["corpus_id"] = p.corpus_id;
  prov["speaker_count"] = p.speaker_count;
  prov["min_speakers"] = p.min_speakers;
  prov["cap"] = p.cap;
  prov["speaker_minimum_met"] = p.speaker_minimum_met;
  Json clips = Json::object();
  for (const auto& [speaker, n] : p.clips_per_speaker) clips[speaker] = n;
  prov["clips_per_speaker"] = std::move(clips);
  prov["utterance_ids"] = p.utterance_ids;
  prov["lf_native_ratio"] = p.lf_native_ratio ? Json(*p.lf_native_ratio) : Json(nullptr);
  prov["lf_long_tokens"] = p.lf_long_tokens;
  prov["lf_short_tokens"] = p.lf_short_tokens;
  index["provenance"] = std::move(prov);
  index["warnings"] = set.warnings;
  internal::WriteJsonFile(dir / "index.json", index);
}

CentroidSet ReadCentroids(const std::filesystem::path& dir) {
  const Json index = internal::ReadJsonFile(dir / "index.json");
  const std::string what = (dir / "index.json").string();
  CentroidSet set;
  set.language = ParseLanguage(Get<std::string>(index, "language", what));
  set.embedding_dim = Get<int>(index, "embedding_dim", what);
  for (const Json& j : Get<Json>(index, "entries", what)) {
    CentroidEntry e;
    e.dimension = ParseDimension(Get<std::string>(j, "dimension", what));
    e.native_grapheme = Get<std::string>(j, "native", what);
    e.substitute_grapheme = Get<std::string>(j, "substitute", what);
    e.native_centroid = ToVector(ReadTensor(dir / Get<std::string>(j, "native_file", what)));
    e.substitute_centroid =
        ToVector(ReadTensor(dir / Get<std::string>(j, "substitute_file", what)));
    if (e.native_centroid.size() != set.embedding_dim ||
        e.substitute_centroid.size() != set.embedding_dim) {
      throw Error(ErrorCode::kDimensionMismatch, what + ": centroid width differs from index");
    }
    e.native_count = j.value("native_count", 0L);
    e.substitute_count = j.value("substitute_count", 0L);
    e.native_utterances = j.value("native_utterances", std::vector<std::string>{});
    e.substitute_utterances = j.value("substitute_utterances", std::vector<std::string>{});
    set.entries.push_back(std::move(e));
  }
  if (auto it = index.find("provenance"); it != index.end()) {
    const Json& j = *it;
    CentroidProvenance& p = set.provenance;
    p.corpus_id = j.value("corpus_id", std::string());
    p.speaker_count = j.value("speaker_count", 0);
    p.min_speakers = j.value("min_speakers", 0);
    p.cap = j.value("cap", kDefaultClipsPerSpeakerCap);
    p.speaker_minimum_met = j.value("speaker_minimum_met", false);
    if (auto c = j.find("clips_per_speaker"); c != j.end()) {
      for (const auto& [speaker, n] : c->items()) p.clips_per_speaker[speaker] = n.get<int>();
    }
    p.utterance_ids = j.value("utterance_ids", std::vector<std::string>{});
    if (auto r = j.find("lf_native_ratio"); r != j.end() && !r->is_null()) {
      p.lf_native_ratio = r->get<double>();
    }
    p.lf_long_tokens = j.value("lf_long_tokens", 0L);
    p.lf_short_tokens = j.value("lf_short_tokens", 0L);
  }
  set.warnings = index.value("warnings", std::vector<std::string>{});
  return set;
}

}  // namespace psp
