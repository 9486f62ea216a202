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

#include "fixtures.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace psp::fixtures {

const DimensionConfig& Tables() {
  static const DimensionConfig config = LoadDimensionConfig(PSP_TEST_TABLES);
  return config;
}

std::vector<std::string> Fillers(Language language) {
  switch (language) {
    case Language::kTelugu: return {"క", "మ", "ర", "వ"};
    case Language::kHindi: return {"क", "म", "र", "व"};
    case Language::kTamil: return {"க", "ம", "ர", "வ"};
  }
  return {};
}

std::vector<std::string> Vocab(Language language) {
  std::vector<std::string> vocab = {kBlank};
  auto add = [&](const std::string& g) {
    if (std::find(vocab.begin(), vocab.end(), g) == vocab.end()) vocab.push_back(g);
  };
  for (const DimensionTable* t : Tables().TablesFor(language)) {
    for (const std::string& g : t->native_graphemes) add(g);
    for (const std::string& g : t->substitute_graphemes) add(g);
  }
  for (const std::string& g : Fillers(language)) add(g);
  return vocab;
}

int IndexOf(const std::vector<std::string>& vocab, const std::string& grapheme) {
  auto it = std::find(vocab.begin(), vocab.end(), grapheme);
  if (it == vocab.end()) throw Error(ErrorCode::kInvalidArgument, "not in vocab: " + grapheme);
  return static_cast<int>(it - vocab.begin());
}

Vector Basis(int k) {
  Vector v = Vector::Zero(kEmbeddingDim);
  v[k] = 1.0;
  return v;
}

Vector BlankDirection() { return Basis(kEmbeddingDim - 1); }

Matrix PlantedEmissions(const std::vector<int>& frame_labels, int vocab_size, double p) {
  Matrix m(static_cast<Eigen::Index>(frame_labels.size()), vocab_size);
  const double rest = std::log((1.0 - p) / (vocab_size - 1));
  m.setConstant(rest);
  for (std::size_t t = 0; t < frame_labels.size(); ++t) {
    m(static_cast<Eigen::Index>(t), frame_labels[t]) = std::log(p);
  }
  return m;
}

UtteranceBundle PlantedBundle(const std::string& id, Language language,
                              const std::vector<Token>& tokens, std::uint64_t f0_seed,
                              double p) {
  UtteranceBundle b;
  b.id = id;
  b.language = language;
  b.vocab = Vocab(language);
  b.blank_index = 0;
  std::vector<int> labels = {0};
  std::vector<Vector> rows = {BlankDirection()};
  for (const Token& tok : tokens) {
    b.text += tok.grapheme;
    const int label = IndexOf(b.vocab, tok.grapheme);
    const Vector e = tok.embedding.size() ? tok.embedding : BlankDirection();
    for (int f = 0; f < tok.frames; ++f) {
      labels.push_back(label);
      rows.push_back(e);
    }
    labels.push_back(0);
    rows.push_back(BlankDirection());
  }
  b.emissions = PlantedEmissions(labels, static_cast<int>(b.vocab.size()), p);
  b.embeddings.resize(static_cast<Eigen::Index>(rows.size()), kEmbeddingDim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    b.embeddings.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  std::mt19937_64 rng(f0_seed);
  std::uniform_real_distribution<double> jitter(-20.0, 20.0);
  const double base = 110.0 + 5.0 * static_cast<double>(f0_seed % 17);
  b.f0_hz.resize(static_cast<Eigen::Index>(rows.size()));
  for (Eigen::Index t = 0; t < b.f0_hz.size(); ++t) {
    b.f0_hz[t] = base + 15.0 * std::sin(0.3 * static_cast<double>(t)) + jitter(rng);
  }
  b.duration_s = static_cast<double>(rows.size()) * b.frame_hop_ms / 1000.0;
  return b;
}

CentroidSet OrthogonalCentroids(Language language) {
  CentroidSet set;
  set.language = language;
  set.embedding_dim = kEmbeddingDim;
  int k = 0;
  for (const DimensionTable* t : Tables().TablesFor(language)) {
    if (t->dimension == Dimension::kLF) continue;
    for (const std::string& g : t->native_graphemes) {
      CentroidEntry e;
      e.dimension = t->dimension;
      e.native_grapheme = g;
      e.substitute_grapheme = t->cognate_map.at(g);
      e.native_centroid = Basis(2 * k);
      e.substitute_centroid = Basis(2 * k + 1);
      e.native_count = 1;
      e.substitute_count = 1;
      set.entries.push_back(std::move(e));
      ++k;
    }
  }
  set.provenance.corpus_id = "orthogonal-fixture";
  return set;
}

World PlantedWorld(Language language, int utterances, int rr_tokens, double p_collapse,
                   std::uint64_t seed) {
  World w;
  w.language = language;
  w.centroids = OrthogonalCentroids(language);
  w.centroids.provenance.lf_native_ratio = 1.9;
  const DimensionTable* rr = Tables().Find(language, Dimension::kRR);
  const DimensionTable* lf = Tables().Find(language, Dimension::kLF);
  const Dimension extra_dim = language == Language::kTamil ? Dimension::kZF : Dimension::kAF;
  const DimensionTable* extra = Tables().Find(language, extra_dim);
  const std::vector<std::string> fillers = Fillers(language);
  // Independent letters only, so each vowel stays a standalone target.
  const std::string long_vowel = lf->native_graphemes.front();
  const std::string short_vowel = lf->cognate_map.at(long_vowel);

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution collapse(p_collapse);
  for (int u = 0; u < utterances; ++u) {
    std::vector<Token> tokens;
    for (int k = 0; k < rr_tokens; ++k) {
      const std::string& g = rr->native_graphemes[(u + k) % rr->native_graphemes.size()];
      const CentroidEntry* e = w.centroids.Find(Dimension::kRR, g);
      const bool c = collapse(rng);
      w.planted_rr_collapses += c ? 1 : 0;
      tokens.push_back({g, 2 + static_cast<int>(rng() % 2), c ? e->substitute_centroid : e->native_centroid});
      tokens.push_back({fillers[(u + k) % fillers.size()], 1 + static_cast<int>(rng() % 3), {}});
    }
    const std::string& rg = rr->native_graphemes[u % rr->native_graphemes.size()];
    tokens.push_back({rr->cognate_map.at(rg), 2, w.centroids.Find(Dimension::kRR, rg)->substitute_centroid});
    const std::string& xg = extra->native_graphemes[u % extra->native_graphemes.size()];
    tokens.push_back({xg, 2, w.centroids.Find(extra_dim, xg)->native_centroid});
    tokens.push_back({long_vowel, 4 + static_cast<int>(rng() % 2), {}});
    tokens.push_back({fillers[0], 1, {}});
    tokens.push_back({short_vowel, 2 + static_cast<int>(rng() % 2), {}});
    char id[32];
    std::snprintf(id, sizeof(id), "utt%04d", u);
    UtteranceBundle b = PlantedBundle(id, language, tokens, seed * 1000 + static_cast<std::uint64_t>(u));
    b.speaker_id = "spk" + std::to_string(u % 5);
    w.bundles.push_back(std::move(b));
  }
  w.bank = BuildReferenceBank(w.bundles);
  return w;
}

std::filesystem::path TempDir(const std::string& name) {
  static std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("psp_test_" + name + "_" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace psp::fixtures
