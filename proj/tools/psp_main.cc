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

// psp: phoneme substitution profile scoring tool.
//
//   psp centroids --corpus DIR --language te --out DIR
//   psp bank      --corpus DIR --language te --out DIR
//   psp sanity    --corpus DIR --language te --refs DIR --out floor.json
//   psp score     --system NAME --corpus DIR --language te --refs DIR --out card.json
//   psp report    card1.json card2.json ... [--format table|json|markdown]
//   psp validate  PATH...
//
// Exit status: 0 success, 1 validation or usage failure, 2 partial scorecard.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psp/psp.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitPartial = 2;

struct GlobalFlags {
  std::uint64_t seed = 0;
  double tau = psp::kDefaultCollapseThreshold;
  double eps = psp::kDefaultFrechetEpsilon;
  int replicates = 1000;
  bool zscore_psd = false;
  int threads = 1;
  std::string tables;
};

std::string EnvOr(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return (v != nullptr && *v != '\0') ? std::string(v) : fallback;
}

fs::path DefaultTablesPath() {
  const std::string env = EnvOr("PSP_TABLES", "");
  if (!env.empty()) return env;
  for (const fs::path& p : {fs::path(PSP_INSTALLED_TABLES), fs::path(PSP_SOURCE_TABLES)}) {
    if (fs::exists(p)) return p;
  }
  return PSP_SOURCE_TABLES;
}

fs::path ResolveCentroidDir(const std::string& flag, psp::Language language) {
  if (!flag.empty()) return flag;
  const std::string env = EnvOr("PSP_CENTROID_DIR", "");
  if (env.empty()) {
    throw psp::Error(psp::ErrorCode::kInvalidArgument,
                     "no --centroids given and PSP_CENTROID_DIR is unset");
  }
  const fs::path per_language = fs::path(env) / std::string(psp::LanguageCode(language));
  return fs::exists(per_language / "index.json") ? per_language : fs::path(env);
}

psp::ScoreSettings Settings(const GlobalFlags& g) {
  psp::ScoreSettings s;
  s.tau = g.tau;
  s.eps = g.eps;
  s.zscore_psd = g.zscore_psd;
  s.bootstrap.replicates = g.replicates;
  s.bootstrap.seed = g.seed;
  s.bootstrap.threads = g.threads;
  return s;
}

void PrintWarnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Corpus loader that fills speaker ids from the manifest when the bundle
// manifest lacks one.
struct Corpus {
  fs::path root;
  psp::CorpusManifest manifest;

  explicit Corpus(const fs::path& dir) : root(dir), manifest(psp::ReadCorpusManifest(dir)) {}

  const psp::CorpusEntry* Find(const std::string& id) const {
    for (const psp::CorpusEntry& e : manifest.utterances) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }

  psp::UtteranceBundle Load(const psp::CorpusEntry& e) const {
    psp::UtteranceBundle b = psp::ReadBundle(root / e.path);
    if (!b.speaker_id && e.speaker_id) b.speaker_id = e.speaker_id;
    return b;
  }

  std::vector<std::string> Ids() const {
    std::vector<std::string> ids;
    for (const psp::CorpusEntry& e : manifest.utterances) ids.push_back(e.id);
    return ids;
  }
};

void WriteOutputs(const psp::CorpusScore& score, const std::string& out,
                  const std::string& dump) {
  psp::WriteScorecard(out, score.card);
  if (!dump.empty()) {
    std::ofstream f(dump, std::ios::binary);
    if (!f) throw psp::Error(psp::ErrorCode::kIo, "cannot write " + dump);
    for (const psp::UtteranceResult& r : score.utterances) f << psp::UtteranceResultToJson(r) << "\n";
  }
  PrintWarnings(score.card.warnings);
  std::cout << psp::RenderScorecardTable(score.card);
}

int RunCentroids(const GlobalFlags& g, const std::string& corpus_dir, const std::string& lang,
                 const std::string& out, int cap, int min_speakers) {
  const psp::Language language = psp::ParseLanguage(lang);
  const psp::DimensionConfig config = psp::LoadDimensionConfig(g.tables);
  const Corpus corpus(corpus_dir);
  psp::SamplingOptions sampling;
  sampling.cap = cap;
  sampling.seed = g.seed;
  const std::vector<std::string> ids = psp::SampleCorpus(corpus.manifest, sampling);

  psp::CentroidBuildOptions options;
  options.corpus_id = corpus.manifest.corpus_id;
  options.cap = cap;
  options.min_speakers = min_speakers;
  psp::CentroidBuilder builder(language, config.tables, options);
  for (const std::string& id : ids) builder.Add(corpus.Load(*corpus.Find(id)));
  const psp::CentroidSet set = builder.Finish();
  psp::WriteCentroids(out, set);
  PrintWarnings(set.warnings);
  std::cout << "wrote " << set.entries.size() << " centroid pairs from " << ids.size()
            << " utterances to " << out << "\n";
  return kExitOk;
}

int RunBank(const std::string& corpus_dir, const std::string& lang, const std::string& out,
            int max_embeddings, int max_prosodic) {
  const psp::Language language = psp::ParseLanguage(lang);
  const Corpus corpus(corpus_dir);
  psp::ReferenceBankOptions options;
  options.source = corpus.manifest.corpus_id;
  options.max_embeddings = max_embeddings;
  options.max_prosodic = max_prosodic;
  psp::ReferenceBankBuilder builder(language, options);
  for (const psp::CorpusEntry& e : corpus.manifest.utterances) builder.Add(corpus.Load(e));
  const psp::ReferenceBank bank = builder.Finish();
  psp::WriteReferenceBank(out, bank);
  PrintWarnings(bank.warnings);
  std::cout << "wrote bank with " << bank.utterance_embeddings.rows() << " embeddings and "
            << bank.prosodic.rows() << " prosodic rows to " << out << "\n";
  return kExitOk;
}

struct ScoreArgs {
  std::string system;
  std::string corpus;
  std::string language;
  std::string centroids;
  std::string refs;
  std::string out;
  std::string floor;
  std::string dump;
};

int RunScore(const GlobalFlags& g, const ScoreArgs& a, bool sanity) {
  const psp::Language language = psp::ParseLanguage(a.language);
  const psp::DimensionConfig config = psp::LoadDimensionConfig(g.tables);
  const psp::CentroidSet centroids = psp::ReadCentroids(ResolveCentroidDir(a.centroids, language));
  const psp::ReferenceBank bank = psp::ReadReferenceBank(a.refs);
  const Corpus corpus(a.corpus);

  psp::ScoreOptions options;
  options.settings = Settings(g);
  options.threads = g.threads;
  options.keep_utterance_results = !a.dump.empty();
  if (!a.floor.empty()) options.floor = psp::ReadScorecard(a.floor);

  const auto load = [&](std::size_t i) { return corpus.Load(corpus.manifest.utterances[i]); };
  const std::size_t n = corpus.manifest.utterances.size();
  psp::CorpusScore score;
  if (sanity) {
    const std::vector<std::string> ids = corpus.Ids();
    score = psp::RunSanity(n, load, ids, language, centroids, bank, config, options);
  } else {
    score = psp::ScoreCorpus(n, load, a.system, language, centroids, bank, config, options);
  }
  WriteOutputs(score, a.out, a.dump);
  return score.card.IsPartial() ? kExitPartial : kExitOk;
}

int RunReport(const std::vector<std::string>& paths, const std::string& format) {
  std::vector<psp::Scorecard> cards;
  for (const std::string& p : paths) cards.push_back(psp::ReadScorecard(p));
  psp::ReportOptions options;
  options.format = psp::ParseReportFormat(format);
  const psp::Report report = psp::RenderReport(cards, options);
  PrintWarnings(report.warnings);
  std::cout << report.text;
  return kExitOk;
}

int ValidateOne(const fs::path& dir) {
  int bad = 0;
  const psp::UtteranceBundle b = psp::ReadBundle(dir);
  for (const psp::Violation& v : psp::ValidateBundle(b)) {
    std::cout << dir.string() << ": " << v.ToString() << "\n";
    ++bad;
  }
  return bad;
}

int RunValidate(const std::vector<std::string>& paths) {
  int bad = 0;
  int checked = 0;
  for (const std::string& p : paths) {
    const fs::path path(p);
    try {
      if (fs::exists(path / psp::kCorpusManifestName)) {
        const psp::CorpusManifest m = psp::ReadCorpusManifest(path);
        for (const psp::CorpusEntry& e : m.utterances) {
          ++checked;
          try {
            bad += ValidateOne(path / e.path);
          } catch (const psp::Error& err) {
            std::cout << (path / e.path).string() << ": " << err.what() << "\n";
            ++bad;
          }
        }
      } else {
        ++checked;
        bad += ValidateOne(path);
      }
    } catch (const psp::Error& err) {
      std::cout << p << ": " << err.what() << "\n";
      ++bad;
    }
  }
  std::cout << checked << " bundle(s) checked, " << bad << " problem(s)\n";
  return bad == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phoneme substitution profile scoring"};
  app.require_subcommand(1);
  GlobalFlags g;
  g.tables = DefaultTablesPath().string();
  app.add_option("--seed", g.seed, "Seed for sampling and bootstrap")->capture_default_str();
  app.add_option("--tau", g.tau, "Collapse threshold")->capture_default_str();
  app.add_option("--eps", g.eps, "Frechet covariance regularizer")->capture_default_str();
  app.add_option("--replicates", g.replicates, "Bootstrap replicates")->capture_default_str();
  app.add_flag("--zscore-psd", g.zscore_psd, "Z-score prosodic features before PSD");
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str();
  app.add_option("--tables", g.tables, "Dimension table YAML")->capture_default_str();

  std::string corpus;
  std::string language;
  std::string out;

  auto* centroids = app.add_subcommand("centroids", "Build native/substitute centroids")->fallthrough();
  int cap = psp::kDefaultClipsPerSpeakerCap;
  int min_speakers = 0;
  centroids->add_option("--corpus", corpus, "Native corpus directory")->required();
  centroids->add_option("--language", language, "te, hi or ta")->required();
  centroids->add_option("--out", out, "Output directory")->required();
  centroids->add_option("--cap", cap, "Clips per speaker")->capture_default_str();
  centroids->add_option("--min-speakers", min_speakers, "Speaker minimum (0: language default)");

  auto* bank = app.add_subcommand("bank", "Build a reference bank for FAD and PSD")->fallthrough();
  int max_embeddings = 1000;
  int max_prosodic = 500;
  bank->add_option("--corpus", corpus, "Native corpus directory")->required();
  bank->add_option("--language", language, "te, hi or ta")->required();
  bank->add_option("--out", out, "Output directory")->required();
  bank->add_option("--max-embeddings", max_embeddings)->capture_default_str();
  bank->add_option("--max-prosodic", max_prosodic)->capture_default_str();

  ScoreArgs sa;
  auto add_score_options = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", sa.corpus, "Bundle corpus directory")->required();
    cmd->add_option("--language", sa.language, "te, hi or ta")->required();
    cmd->add_option("--centroids", sa.centroids, "Centroid directory (default $PSP_CENTROID_DIR)");
    cmd->add_option("--refs", sa.refs, "Reference bank directory")->required();
    cmd->add_option("--out", sa.out, "Scorecard JSON path")->required();
    cmd->add_option("--dump-utterances", sa.dump, "Per-utterance JSON lines for audit");
  };
  auto* score = app.add_subcommand("score", "Score a system corpus")->fallthrough();
  add_score_options(score);
  score->add_option("--system", sa.system, "System name")->required();
  score->add_option("--floor", sa.floor, "Native-floor scorecard for normalization");
  auto* sanity = app.add_subcommand("sanity", "Score held-out native audio as a noise floor")
                     ->fallthrough();
  add_score_options(sanity);

  std::vector<std::string> paths;
  std::string format = "table";
  auto* report = app.add_subcommand("report", "Leaderboards and cross-language deltas")->fallthrough();
  report->add_option("scorecards", paths, "Scorecard JSON files")->required();
  report->add_option("--format", format, "table, json or markdown")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check bundles or corpora")->fallthrough();
  validate->add_option("paths", paths, "Bundle or corpus directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (*centroids) return RunCentroids(g, corpus, language, out, cap, min_speakers);
    if (*bank) return RunBank(corpus, language, out, max_embeddings, max_prosodic);
    if (*score) return RunScore(g, sa, false);
    if (*sanity) return RunScore(g, sa, true);
    if (*report) return RunReport(paths, format);
    if (*validate) return RunValidate(paths);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
