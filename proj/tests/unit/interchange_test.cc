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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "fixtures.h"
#include "psp/psp.h"

namespace psp {
namespace {

std::vector<std::uint8_t> Header(std::uint8_t ndim, std::vector<std::uint32_t> dims) {
  std::vector<std::uint8_t> b = {'P', 'S', 'P', 'T', 1, 0, ndim};
  for (std::uint32_t d : dims) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(d >> (8 * i)));
  }
  return b;
}

void AppendFloat(std::vector<std::uint8_t>& b, float f) {
  const auto u = std::bit_cast<std::uint32_t>(f);
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
}

ErrorCode CodeOf(const std::vector<std::uint8_t>& bytes) {
  try {
    DecodeTensor(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

TEST(TensorFile, DecodesVectorOfThree) {
  auto bytes = Header(1, {3});
  for (float f : {1.0f, 2.0f, 3.0f}) AppendFloat(bytes, f);
  const Tensor t = DecodeTensor(bytes);
  ASSERT_EQ(t.dims, std::vector<std::uint32_t>{3});
  EXPECT_EQ(t.values, (std::vector<float>{1.0f, 2.0f, 3.0f}));
  const Vector v = ToVector(t);
  EXPECT_EQ(v.size(), 3);
  EXPECT_EQ(v[2], 3.0);
}

TEST(TensorFile, ShortPayloadIsTruncated) {
  auto bytes = Header(2, {2, 2});
  for (float f : {1.0f, 2.0f, 3.0f}) AppendFloat(bytes, f);
  EXPECT_EQ(CodeOf(bytes), ErrorCode::kTruncatedPayload);
}

TEST(TensorFile, HeaderErrors) {
  auto bad_magic = Header(1, {1});
  bad_magic[0] = 'X';
  AppendFloat(bad_magic, 1.0f);
  EXPECT_EQ(CodeOf(bad_magic), ErrorCode::kBadMagic);

  auto bad_version = Header(1, {1});
  bad_version[4] = 2;
  AppendFloat(bad_version, 1.0f);
  EXPECT_EQ(CodeOf(bad_version), ErrorCode::kUnsupportedVersion);

  auto extra = Header(1, {1});
  AppendFloat(extra, 1.0f);
  extra.push_back(0);
  EXPECT_EQ(CodeOf(extra), ErrorCode::kTrailingBytes);

  EXPECT_EQ(CodeOf(Header(2, {65536, 65536})), ErrorCode::kDimOverflow);
  EXPECT_EQ(CodeOf(Header(3, {1, 1, 1})), ErrorCode::kBadHeader);
  EXPECT_EQ(CodeOf({'P', 'S', 'P', 'T', 1}), ErrorCode::kTruncatedPayload);
  EXPECT_EQ(CodeOf(Header(1, {0})), ErrorCode::kBadHeader);
}

TEST(TensorFile, RandomRoundTripIsByteIdentical) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> ndim(1, 2);
  std::uniform_int_distribution<std::uint32_t> extent(1, 17);
  std::normal_distribution<float> value(0.0f, 100.0f);
  const auto dir = fixtures::TempDir("tensor");
  for (int trial = 0; trial < 100; ++trial) {
    Tensor t;
    t.dims.resize(ndim(rng));
    for (auto& d : t.dims) d = extent(rng);
    t.values.resize(t.ElementCount());
    for (float& v : t.values) v = value(rng);
    const auto bytes = EncodeTensor(t);
    const auto path = dir / ("t" + std::to_string(trial) + ".pspt");
    {
      std::ofstream f(path, std::ios::binary);
      f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }
    const Tensor back = ReadTensor(path);
    EXPECT_EQ(back, t);
    const auto path2 = dir / ("u" + std::to_string(trial) + ".pspt");
    WriteTensor(path2, back);
    std::ifstream f2(path2, std::ios::binary);
    const std::vector<std::uint8_t> again((std::istreambuf_iterator<char>(f2)), {});
    ASSERT_EQ(again, bytes) << "trial " << trial;
  }
  std::filesystem::remove_all(dir);
}

UtteranceBundle GoodBundle() {
  return fixtures::PlantedBundle("u1", Language::kTelugu,
                                 {{"ట", 2, {}}, {"క", 3, {}}, {"మ", 2, {}}});
}

TEST(ValidateBundle, WellFormedHasNoViolations) {
  EXPECT_TRUE(ValidateBundle(GoodBundle()).empty());
}

TEST(ValidateBundle, FrameCountMismatch) {
  UtteranceBundle b;
  b.id = "x";
  b.vocab = {"<blank>", "a"};
  b.emissions = fixtures::PlantedEmissions(std::vector<int>(10, 1), 2);
  b.embeddings = Matrix::Ones(9, 4);
  b.f0_hz = Vector::Constant(10, 100.0);
  b.duration_s = 0.2;
  const auto v = ValidateBundle(b);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message, "frame count mismatch");
}

TEST(ValidateBundle, RowSummingToHalfIsNotNormalized) {
  UtteranceBundle b = GoodBundle();
  b.emissions.row(3).setConstant(std::log(0.5 / static_cast<double>(b.emissions.cols())));
  const auto v = ValidateBundle(b);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message, "row not normalized");
}

TEST(ValidateBundle, OrderIsFixed) {
  UtteranceBundle b = GoodBundle();
  b.f0_hz[0] = -1.0;
  b.id.clear();
  b.embeddings(0, 0) = std::nan("");
  const auto v1 = ValidateBundle(b);
  const auto v2 = ValidateBundle(b);
  EXPECT_EQ(v1, v2);
  ASSERT_EQ(v1.size(), 3u);
  EXPECT_EQ(v1[0].field, "id");
  EXPECT_EQ(v1[1].field, "embeddings");
  EXPECT_EQ(v1[2].field, "f0_hz");
}

TEST(Bundle, DirectoryRoundTrip) {
  const auto dir = fixtures::TempDir("bundle");
  UtteranceBundle b = GoodBundle();
  b.speaker_id = "spk1";
  WriteBundle(dir / "u1", b);
  const UtteranceBundle back = ReadBundle(dir / "u1");
  EXPECT_EQ(back.id, b.id);
  EXPECT_EQ(back.text, b.text);
  EXPECT_EQ(back.vocab, b.vocab);
  EXPECT_EQ(back.speaker_id, b.speaker_id);
  EXPECT_EQ(back.frames(), b.frames());
  EXPECT_LT((back.emissions - b.emissions).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_TRUE(ValidateBundle(back).empty());

  WriteCorpus(dir / "corpus", "c1", {b});
  const CorpusManifest m = ReadCorpusManifest(dir / "corpus");
  EXPECT_EQ(m.corpus_id, "c1");
  ASSERT_EQ(m.utterances.size(), 1u);
  EXPECT_EQ(m.utterances[0].speaker_id, std::optional<std::string>("spk1"));
  std::filesystem::remove_all(dir);
}

TEST(DimensionTables, TamilHasNoAspiration) {
  std::set<Dimension> dims;
  for (const DimensionTable* t : fixtures::Tables().TablesFor(Language::kTamil)) {
    dims.insert(t->dimension);
  }
  EXPECT_EQ(dims, (std::set<Dimension>{Dimension::kRR, Dimension::kLF, Dimension::kZF}));
  for (Language l : {Language::kTelugu, Language::kHindi}) {
    for (const DimensionTable* t : fixtures::Tables().TablesFor(l)) {
      EXPECT_NE(t->dimension, Dimension::kZF);
    }
  }
}

TEST(DimensionTables, TeluguRetroflexSets) {
  const DimensionTable* rr = fixtures::Tables().Find(Language::kTelugu, Dimension::kRR);
  ASSERT_NE(rr, nullptr);
  EXPECT_EQ(rr->native_graphemes, (std::vector<std::string>{"ట", "డ", "ణ", "ష", "ళ"}));
  EXPECT_EQ(rr->substitute_graphemes, (std::vector<std::string>{"త", "ద", "న", "స", "ల"}));
}

TEST(DimensionTables, EveryLongVowelHasShortCognate) {
  for (Language l : kAllLanguages) {
    const DimensionTable* lf = fixtures::Tables().Find(l, Dimension::kLF);
    ASSERT_NE(lf, nullptr);
    for (const std::string& g : lf->native_graphemes) {
      ASSERT_TRUE(lf->cognate_map.contains(g)) << g;
      EXPECT_TRUE(lf->IsSubstitute(lf->cognate_map.at(g))) << g;
    }
  }
}

TEST(DimensionTables, Errors) {
  auto code = [](const std::string& yaml) {
    try {
      ParseDimensionConfig(yaml);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code("version: 1\nlanguages:\n  te:\n    dimensions:\n      RR:\n"
                 "        native: [a, b]\n        substitute: [b, c]\n"
                 "        cognates: {a: b, b: c}\n"),
            ErrorCode::kOverlappingSets);
  EXPECT_EQ(code("version: 1\nlanguages:\n  te:\n    dimensions:\n      RR:\n"
                 "        native: [a, b]\n        substitute: [c]\n"
                 "        cognates: {a: c}\n"),
            ErrorCode::kMissingCognate);
  EXPECT_EQ(code("version: 1\nlanguages:\n  ta:\n    dimensions:\n      AF:\n"
                 "        native: [a]\n        substitute: [c]\n        cognates: {a: c}\n"),
            ErrorCode::kNotApplicable);
  EXPECT_EQ(code("version: 1\nlanguages:\n  xx:\n    dimensions: {}\n"),
            ErrorCode::kUnknownLanguage);
}

TEST(DimensionTables, ReconcileVocabWarnsOnMissingGraphemes) {
  std::vector<std::string> vocab = fixtures::Vocab(Language::kTelugu);
  EXPECT_TRUE(ReconcileVocab(vocab, fixtures::Tables(), Language::kTelugu).empty());
  vocab.erase(std::find(vocab.begin(), vocab.end(), "ళ"));
  EXPECT_EQ(ReconcileVocab(vocab, fixtures::Tables(), Language::kTelugu).size(), 1u);
}

TEST(TextTargets, ClustersAndFallback) {
  const std::vector<std::string> vocab = {"<blank>", "క", "ా", "కి", "మ"};
  const TargetSequence t = TextToTargets("కా కి, మx", vocab, 0);
  EXPECT_EQ(t.graphemes, (std::vector<std::string>{"క", "ా", "కి", "మ"}));
  EXPECT_EQ(t.labels, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(t.dropped, (std::vector<std::string>{"x"}));
}

TEST(TextTargets, InvalidUtf8Throws) {
  EXPECT_THROW(DecodeUtf8("\xe0\xb0"), Error);
  EXPECT_THROW(DecodeUtf8("\xff"), Error);
  EXPECT_EQ(EncodeUtf8(DecodeUtf8("టమ")), "టమ");
}

}  // namespace
}  // namespace psp
