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

#include "psp/types.h"

#include <string>

#include "psp/error.h"

namespace psp {

std::string_view LanguageCode(Language language) {
  switch (language) {
    case Language::kTelugu: return "te";
    case Language::kHindi: return "hi";
    case Language::kTamil: return "ta";
  }
  return "??";
}

Language ParseLanguage(std::string_view code) {
  for (Language language : kAllLanguages) {
    if (LanguageCode(language) == code) return language;
  }
  throw Error(ErrorCode::kUnknownLanguage, "unknown language '" + std::string(code) + "'");
}

std::string_view DimensionName(Dimension dimension) {
  switch (dimension) {
    case Dimension::kRR: return "RR";
    case Dimension::kAF: return "AF";
    case Dimension::kLF: return "LF";
    case Dimension::kZF: return "ZF";
  }
  return "??";
}

Dimension ParseDimension(std::string_view name) {
  for (Dimension dimension : kAllDimensions) {
    if (DimensionName(dimension) == name) return dimension;
  }
  throw Error(ErrorCode::kParse, "unknown dimension '" + std::string(name) + "'");
}

bool IsApplicable(Language language, Dimension dimension) {
  switch (dimension) {
    case Dimension::kAF: return language != Language::kTamil;
    case Dimension::kZF: return language == Language::kTamil;
    default: return true;
  }
}

int DefaultMinSpeakers(Language language) {
  return language == Language::kHindi ? 40 : 20;
}

}  // namespace psp
