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

#include "psp/dimension_table.h"

#include <algorithm>
#include <set>

#include <yaml-cpp/yaml.h>

#include "json_util.h"
#include "psp/error.h"

namespace psp {
namespace {

std::vector<std::string> ReadGraphemeList(const YAML::Node& node, const std::string& what) {
  if (!node || !node.IsSequence()) {
    throw Error(ErrorCode::kParse, what + ": expected a list of graphemes");
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const YAML::Node& item : node) {
    std::string g = item.as<std::string>();
    if (g.empty()) throw Error(ErrorCode::kParse, what + ": empty grapheme");
    if (!seen.insert(g).second) throw Error(ErrorCode::kParse, what + ": duplicate '" + g + "'");
    out.push_back(std::move(g));
  }
  return out;
}

void CheckTable(const DimensionTable& table, const std::string& what) {
  for (const std::string& g : table.native_graphemes) {
    if (table.IsSubstitute(g)) {
      throw Error(ErrorCode::kOverlappingSets, what + ": '" + g + "' is both native and substitute");
    }
    auto it = table.cognate_map.find(g);
    if (it == table.cognate_map.end()) {
      throw Error(ErrorCode::kMissingCognate, what + ": no cognate for '" + g + "'");
    }
    if (!table.IsSubstitute(it->second)) {
      throw Error(ErrorCode::kMissingCognate,
                  what + ": cognate '" + it->second + "' of '" + g + "' is not a substitute");
    }
  }
  for (const auto& [native, substitute] : table.cognate_map) {
    if (!table.IsNative(native)) {
      throw Error(ErrorCode::kMissingCognate,
                  what + ": cognate entry for non-native '" + native + "'");
    }
  }
}

}  // namespace

bool DimensionTable::IsNative(std::string_view grapheme) const {
  return std::find(native_graphemes.begin(), native_graphemes.end(), grapheme) !=
         native_graphemes.end();
}

bool DimensionTable::IsSubstitute(std::string_view grapheme) const {
  return std::find(substitute_graphemes.begin(), substitute_graphemes.end(), grapheme) !=
         substitute_graphemes.end();
}

std::vector<const DimensionTable*> DimensionConfig::TablesFor(Language language) const {
  std::vector<const DimensionTable*> out;
  for (const DimensionTable& t : tables) {
    if (t.language == language) out.push_back(&t);
  }
  return out;
}

const DimensionTable* DimensionConfig::Find(Language language, Dimension dimension) const {
  for (const DimensionTable& t : tables) {
    if (t.language == language && t.dimension == dimension) return &t;
  }
  return nullptr;
}

DimensionConfig ParseDimensionConfig(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("dimension tables: ") + e.what());
  }

  DimensionConfig config;
  config.source_text = std::string(yaml_text);
  try {
    config.version = root["version"] ? root["version"].as<int>() : 1;
    if (config.version != 1) {
      throw Error(ErrorCode::kParse,
                  "unsupported dimension table version " + std::to_string(config.version));
    }
    const YAML::Node languages = root["languages"];
    if (!languages || !languages.IsMap()) {
      throw Error(ErrorCode::kParse, "dimension tables: missing 'languages' map");
    }
    for (const auto& lang_item : languages) {
      const Language language = ParseLanguage(lang_item.first.as<std::string>());
      const YAML::Node body = lang_item.second;
      if (body["lf_native_ratio"]) {
        const double ratio = body["lf_native_ratio"].as<double>();
        if (!(ratio > 1.0)) {
          throw Error(ErrorCode::kParse, "lf_native_ratio must exceed 1");
        }
        config.lf_native_ratio[language] = ratio;
      }
      const YAML::Node dims = body["dimensions"];
      if (!dims || !dims.IsMap()) continue;
      for (const auto& dim_item : dims) {
        const Dimension dimension = ParseDimension(dim_item.first.as<std::string>());
        const std::string what =
            std::string(LanguageCode(language)) + "/" + std::string(DimensionName(dimension));
        if (!IsApplicable(language, dimension)) {
          throw Error(ErrorCode::kNotApplicable, what + " is not an applicable dimension");
        }
        if (config.Find(language, dimension) != nullptr) {
          throw Error(ErrorCode::kParse, what + " defined twice");
        }
        DimensionTable table;
        table.language = language;
        table.dimension = dimension;
        table.native_graphemes = ReadGraphemeList(dim_item.second["native"], what + " native");
        table.substitute_graphemes =
            ReadGraphemeList(dim_item.second["substitute"], what + " substitute");
        if (const YAML::Node cognates = dim_item.second["cognates"]; cognates) {
          if (!cognates.IsMap()) throw Error(ErrorCode::kParse, what + ": cognates must be a map");
          for (const auto& c : cognates) {
            table.cognate_map[c.first.as<std::string>()] = c.second.as<std::string>();
          }
        }
        CheckTable(table, what);
        config.tables.push_back(std::move(table));
      }
    }
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("dimension tables: ") + e.what());
  }

  auto order = [](const DimensionTable& t) {
    return std::pair{static_cast<int>(t.language), static_cast<int>(t.dimension)};
  };
  std::stable_sort(config.tables.begin(), config.tables.end(),
                   [&](const auto& a, const auto& b) { return order(a) < order(b); });
  return config;
}

DimensionConfig LoadDimensionConfig(const std::filesystem::path& path) {
  return ParseDimensionConfig(internal::ReadTextFile(path));
}

std::vector<DimensionTable> LoadDimensionTables(const std::filesystem::path& path) {
  return LoadDimensionConfig(path).tables;
}

std::vector<std::string> ReconcileVocab(const std::vector<std::string>& vocab,
                                        const DimensionConfig& config, Language language) {
  const std::set<std::string> known(vocab.begin(), vocab.end());
  std::set<std::string> missing;
  for (const DimensionTable* t : config.TablesFor(language)) {
    for (const auto* list : {&t->native_graphemes, &t->substitute_graphemes}) {
      for (const std::string& g : *list) {
        if (!known.contains(g)) missing.insert(g);
      }
    }
  }
  std::vector<std::string> warnings;
  for (const std::string& g : missing) {
    warnings.push_back("UnknownGrapheme: '" + g + "' is not in the aligner vocab");
  }
  return warnings;
}

}  // namespace psp
