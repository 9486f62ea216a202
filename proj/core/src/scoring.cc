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

#include "psp/scoring.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include "json_util.h"
#include "psp/bundle.h"
#include "psp/centroids.h"
#include "psp/ctc_align.h"
#include "psp/dimension_table.h"
#include "psp/error.h"
#include "psp/reference_bank.h"
#include "psp/text_targets.h"

namespace psp {
namespace {

using internal::Json;

std::string ExactNumber(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Grapheme -> number of times it was dropped, merged across utterances.
using DropCounts = std::map<std::string, long>;

struct Context {
  Language language;
  const CentroidSet& centroids;
  const ReferenceBank& bank;
  const DimensionConfig& tables;
  const ScoreSettings& settings;
};

UtteranceResult ProcessUtterance(const UtteranceBundle& bundle, const Context& ctx,
                                 DropCounts& drops) {
  UtteranceResult r;
  r.id = bundle.id;
  if (bundle.language != ctx.language) {
    throw Error(ErrorCode::kLanguageMismatch,
                "bundle language " + std::string(LanguageCode(bundle.language)));
  }
  if (const auto violations = ValidateBundle(bundle); !violations.empty()) {
    std::string msg;
    for (const Violation& v : violations) msg += (msg.empty() ? "" : "; ") + v.ToString();
    throw Error(ErrorCode::kValidation, msg);
  }
  const TargetSequence targets = TextToTargets(bundle.text, bundle.vocab, bundle.blank_index);
  for (const std::string& g : targets.dropped) ++drops[g];
  if (!ctx.centroids.entries.empty() && bundle.embeddings.cols() != ctx.centroids.embedding_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding width differs from centroids");
  }
  if (targets.labels.empty()) {
    throw Error(ErrorCode::kBadTargetIndex, "no alignable graphemes in text");
  }
  const Alignment alignment = AlignBundle(bundle, targets);

  for (const DimensionTable* table : ctx.tables.TablesFor(ctx.language)) {
    if (table->dimension == Dimension::kLF) {
      r.durations = CollectDurations(alignment.spans, *table, bundle.frame_hop_ms);
    } else {
      r.tokens[table->dimension] = ScorePerPhoneme(bundle, alignment.spans, *table, ctx.centroids,
                                                   ctx.settings.tau, &r.warnings);
    }
  }
  r.embedding = UtteranceEmbedding(bundle);
  try {
    r.prosody = ComputeProsodicVector(bundle, alignment.spans);
  } catch (const Error& e) {
    r.warnings.push_back(bundle.id + ": no prosodic vector: " + e.what());
  }
  r.ok = true;
  return r;
}

void FillNormalized(Dimension dim, DimensionScore& score, const std::optional<Scorecard>& floor,
                    std::vector<std::string>& warnings) {
  if (!floor) return;
  auto it = floor->per_dimension.find(dim);
  if (it == floor->per_dimension.end() || !it->second.score) return;
  try {
    score.normalized = NormalizeFloor(score.mean_fidelity, it->second.score->mean_fidelity);
  } catch (const Error& e) {
    warnings.push_back(std::string(DimensionName(dim)) + ": no normalized value: " + e.what());
  }
}

DimensionResult ScoreProbeDimension(Dimension dim, const std::vector<UtteranceResult>& ok,
                                    const ScoreSettings& settings) {
  std::vector<TokenFidelity> pooled;
  std::vector<std::vector<double>> groups;
  for (const UtteranceResult& r : ok) {
    std::vector<double> group;
    if (auto it = r.tokens.find(dim); it != r.tokens.end()) {
      for (const TokenFidelity& t : it->second) {
        pooled.push_back(t);
        group.push_back(t.fidelity);
      }
    }
    groups.push_back(std::move(group));
  }
  DimensionResult result;
  if (pooled.empty()) {
    result.status = DimensionStatus::kError;
    result.note = "no scorable tokens";
    return result;
  }
  DimensionScore score = Aggregate(pooled, AggregationLevel::kCorpus);
  const Interval mean_ci =
      BootstrapCi(groups, BootstrapStatistic::kPooledMean, settings.bootstrap, settings.tau);
  const Interval collapse_ci =
      BootstrapCi(groups, BootstrapStatistic::kCollapseRate, settings.bootstrap, settings.tau);
  score.ci_low = mean_ci.low;
  score.ci_high = mean_ci.high;
  score.collapse_ci_low = collapse_ci.low;
  score.collapse_ci_high = collapse_ci.high;
  result.score = score;
  return result;
}

DimensionResult ScoreLengthDimension(const std::vector<UtteranceResult>& ok,
                                     std::optional<double> native_ratio,
                                     const ScoreSettings& settings) {
  DimensionResult result;
  if (!native_ratio) {
    result.status = DimensionStatus::kError;
    result.note = "no native duration prior in config or centroid provenance";
    return result;
  }
  std::vector<DurationContrast> units;
  DurationContrast pooled;
  for (const UtteranceResult& r : ok) {
    pooled += r.durations;
    if (r.durations.long_count + r.durations.short_count > 0) units.push_back(r.durations);
  }
  if (!pooled.HasContrast()) {
    result.status = DimensionStatus::kError;
    result.note = "no long/short vowel contrast tokens";
    return result;
  }
  DimensionScore score;
  score.dimension = Dimension::kLF;
  score.has_collapse = false;
  score.mean_fidelity = LengthFidelityFromRatio(pooled.Ratio(), *native_ratio);
  score.n_tokens = pooled.long_count + pooled.short_count;
  // A resample that lost either vowel class shows no contrast and scores 0.
  const std::vector<double> reps = BootstrapReplicates(
      units.size(),
      [&](std::span<const std::size_t> draw) {
        DurationContrast c;
        for (std::size_t i : draw) c += units[i];
        return c.HasContrast() ? LengthFidelityFromRatio(c.Ratio(), *native_ratio) : 0.0;
      },
      settings.bootstrap);
  const Interval ci = PercentileInterval(reps, settings.bootstrap.alpha);
  score.ci_low = ci.low;
  score.ci_high = ci.high;
  result.score = score;
  return result;
}

Matrix StackVectors(const std::vector<Vector>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

}  // namespace

std::string UtteranceResultToJson(const UtteranceResult& r) {
  Json j;
  j["id"] = r.id;
  j["ok"] = r.ok;
  if (!r.error.empty()) j["error"] = r.error;
  Json dims = Json::object();
  for (const auto& [dim, tokens] : r.tokens) {
    Json list = Json::array();
    for (const TokenFidelity& t : tokens) {
      Json tj;
      tj["grapheme"] = t.grapheme;
      tj["fidelity"] = t.fidelity;
      tj["collapsed"] = t.collapsed;
      tj["low_confidence"] = t.low_confidence;
      tj["start_frame"] = t.span.start_frame;
      tj["end_frame"] = t.span.end_frame;
      tj["align_score"] = t.span.score;
      list.push_back(std::move(tj));
    }
    dims[std::string(DimensionName(dim))] = std::move(list);
  }
  j["tokens"] = std::move(dims);
  Json lf;
  lf["long_seconds"] = r.durations.long_seconds;
  lf["long_count"] = r.durations.long_count;
  lf["short_seconds"] = r.durations.short_seconds;
  lf["short_count"] = r.durations.short_count;
  j["lf_durations"] = std::move(lf);
  if (r.prosody) {
    j["prosody"] = {r.prosody->pitch_range, r.prosody->logf0_mean, r.prosody->speech_rate,
                    r.prosody->npvi, r.prosody->log_duration};
  }
  j["warnings"] = r.warnings;
  return j.dump();
}

std::string ConfigFingerprint(const CentroidSet& centroids, const DimensionConfig& tables,
                              const ScoreSettings& settings) {
  std::string data = "psp-fingerprint-v1\n";
  data += std::string(LanguageCode(centroids.language)) + "\n";
  data += std::to_string(centroids.embedding_dim) + "\n";
  for (const CentroidEntry& e : centroids.entries) {
    data += std::string(DimensionName(e.dimension)) + "|" + e.native_grapheme + "|" +
            e.substitute_grapheme + "|" + std::to_string(e.native_count) + "|" +
            std::to_string(e.substitute_count) + "\n";
    for (const Vector* v : {&e.native_centroid, &e.substitute_centroid}) {
      for (Eigen::Index i = 0; i < v->size(); ++i) data += ExactNumber((*v)[i]) + ",";
      data += "\n";
    }
  }
  if (centroids.provenance.lf_native_ratio) {
    data += "lf_prov=" + ExactNumber(*centroids.provenance.lf_native_ratio) + "\n";
  }
  data += tables.source_text + "\n";
  data += "tau=" + ExactNumber(settings.tau) + "\n";
  data += "eps=" + ExactNumber(settings.eps) + "\n";
  data += "boot=" + std::to_string(settings.bootstrap.replicates) + "," +
          ExactNumber(settings.bootstrap.alpha) + "," + std::to_string(settings.bootstrap.seed) +
          "," + (settings.bootstrap.unit == ResampleUnit::kToken ? "token" : "utterance") + "\n";
  data += std::string("zscore=") + (settings.zscore_psd ? "1" : "0") + "\n";
  return Fnv1aHex(data);
}

CorpusScore ScoreCorpus(std::size_t n_bundles, const BundleLoader& load,
                        const std::string& system, Language language,
                        const CentroidSet& centroids, const ReferenceBank& bank,
                        const DimensionConfig& tables, const ScoreOptions& options) {
  const ScoreSettings& settings = options.settings;
  settings.bootstrap.Validate();
  if (!(settings.tau > 0.0 && settings.tau < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must lie in (0, 1)");
  }
  if (!(settings.eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be >= 0");
  if (centroids.language != language) {
    throw Error(ErrorCode::kLanguageMismatch, "centroids are for " +
                                                  std::string(LanguageCode(centroids.language)));
  }
  if (bank.language != language) {
    throw Error(ErrorCode::kLanguageMismatch,
                "reference bank is for " + std::string(LanguageCode(bank.language)));
  }
  if (options.floor && options.floor->language != language) {
    throw Error(ErrorCode::kLanguageMismatch, "noise-floor scorecard language differs");
  }

  const Context ctx{language, centroids, bank, tables, settings};
  std::vector<UtteranceResult> results(n_bundles);
  std::vector<DropCounts> drops(n_bundles);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n_bundles; i = next++) {
      try {
        const UtteranceBundle bundle = load(i);
        results[i].id = bundle.id;
        results[i] = ProcessUtterance(bundle, ctx, drops[i]);
      } catch (const std::exception& e) {
        results[i].ok = false;
        results[i].error = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(n_bundles)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Deterministic fold in id order; load-failures keep their position key.
  for (std::size_t i = 0; i < n_bundles; ++i) {
    if (results[i].id.empty()) results[i].id = "#" + std::to_string(i);
  }
  std::vector<std::size_t> order(n_bundles);
  for (std::size_t i = 0; i < n_bundles; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return results[a].id < results[b].id; });

  Scorecard card;
  card.system = system;
  card.language = language;
  card.settings = settings;
  std::vector<UtteranceResult> ok;
  std::set<std::string> seen;
  DropCounts merged_drops;
  for (std::size_t i : order) {
    UtteranceResult& r = results[i];
    if (r.ok && !seen.insert(r.id).second) {
      r.ok = false;
      r.error = "duplicate utterance id";
    }
    for (const auto& [g, n] : drops[i]) merged_drops[g] += n;
    if (!r.ok) {
      ++card.n_failed;
      card.failed_utterances.push_back(r.id);
      card.warnings.push_back(r.id + ": failed: " + r.error);
      continue;
    }
    card.warnings.insert(card.warnings.end(), r.warnings.begin(), r.warnings.end());
    ok.push_back(r);
  }
  for (const auto& [g, n] : merged_drops) {
    card.warnings.push_back("grapheme '" + g + "' not in aligner vocab, dropped " +
                            std::to_string(n) + " time(s)");
  }
  card.n_wavs = static_cast<int>(ok.size());

  std::optional<double> native_ratio;
  if (auto it = tables.lf_native_ratio.find(language); it != tables.lf_native_ratio.end()) {
    native_ratio = it->second;
  } else if (centroids.provenance.lf_native_ratio && *centroids.provenance.lf_native_ratio > 1.0) {
    native_ratio = centroids.provenance.lf_native_ratio;
  }
  card.lf_native_ratio = native_ratio;

  for (Dimension dim : kAllDimensions) {
    if (!IsApplicable(language, dim)) {
      if (dim == Dimension::kAF) {
        card.per_dimension[dim] = {DimensionStatus::kNotApplicable, std::nullopt,
                                   "not applicable to this language"};
      }
      continue;
    }
    DimensionResult result;
    if (tables.Find(language, dim) == nullptr) {
      result = {DimensionStatus::kError, std::nullopt, "no dimension table"};
    } else if (ok.empty()) {
      result = {DimensionStatus::kError, std::nullopt, "no utterances scored"};
    } else if (dim == Dimension::kLF) {
      result = ScoreLengthDimension(ok, native_ratio, settings);
    } else {
      result = ScoreProbeDimension(dim, ok, settings);
    }
    if (result.score) FillNormalized(dim, *result.score, options.floor, card.warnings);
    card.per_dimension[dim] = std::move(result);
  }

  std::vector<Vector> embeddings;
  std::vector<Vector> prosody;
  for (const UtteranceResult& r : ok) {
    embeddings.push_back(r.embedding);
    if (r.prosody) prosody.push_back(r.prosody->AsRow().transpose());
  }
  try {
    if (embeddings.size() < 2) throw Error(ErrorCode::kTooFewSamples, "fewer than 2 utterances");
    card.fad = Frechet(FitGaussian(StackVectors(embeddings)),
                       FitGaussian(bank.utterance_embeddings), settings.eps);
  } catch (const Error& e) {
    card.fad_note = e.what();
  }
  try {
    if (prosody.size() < 2) {
      throw Error(ErrorCode::kTooFewSamples, "fewer than 2 prosodic vectors");
    }
    card.psd = Psd(StackVectors(prosody), bank.prosodic, settings.zscore_psd, settings.eps);
  } catch (const Error& e) {
    card.psd_note = e.what();
  }

  card.config_fingerprint = ConfigFingerprint(centroids, tables, settings);

  CorpusScore out;
  out.card = std::move(card);
  if (options.keep_utterance_results) {
    for (std::size_t i : order) out.utterances.push_back(std::move(results[i]));
  }
  return out;
}

CorpusScore ScoreCorpus(std::span<const UtteranceBundle> bundles, const std::string& system,
                        Language language, const CentroidSet& centroids,
                        const ReferenceBank& bank, const DimensionConfig& tables,
                        const ScoreOptions& options) {
  return ScoreCorpus(
      bundles.size(), [&](std::size_t i) { return bundles[i]; }, system, language, centroids,
      bank, tables, options);
}

void CheckHeldOutDisjoint(std::span<const std::string> held_out_ids,
                          const CentroidSet& centroids) {
  const std::set<std::string> used(centroids.provenance.utterance_ids.begin(),
                                   centroids.provenance.utterance_ids.end());
  std::vector<std::string> overlap;
  for (const std::string& id : held_out_ids) {
    if (used.contains(id)) overlap.push_back(id);
  }
  if (!overlap.empty()) {
    std::string list;
    for (std::size_t i = 0; i < overlap.size() && i < 5; ++i) list += (i ? ", " : "") + overlap[i];
    throw Error(ErrorCode::kOverlapWithCentroidCorpus,
                std::to_string(overlap.size()) + " held-out id(s) were used for centroids: " +
                    list);
  }
}

CorpusScore RunSanity(std::size_t n_bundles, const BundleLoader& load,
                      std::span<const std::string> held_out_ids, Language language,
                      const CentroidSet& centroids, const ReferenceBank& bank,
                      const DimensionConfig& tables, const ScoreOptions& options) {
  CheckHeldOutDisjoint(held_out_ids, centroids);
  ScoreOptions opts = options;
  opts.floor.reset();
  CorpusScore out =
      ScoreCorpus(n_bundles, load, "native", language, centroids, bank, tables, opts);
  out.card.kind = ScorecardKind::kNativeFloor;
  return out;
}

}  // namespace psp
