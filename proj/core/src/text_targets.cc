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

#include "psp/text_targets.h"

#include <unordered_map>

#include "psp/error.h"

namespace psp {

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      cp = lead & 0x1F;
      extra = 1;
    } else if ((lead & 0xF0) == 0xE0) {
      cp = lead & 0x0F;
      extra = 2;
    } else if ((lead & 0xF8) == 0xF0) {
      cp = lead & 0x07;
      extra = 3;
    } else {
      throw Error(ErrorCode::kParse, "invalid UTF-8 lead byte");
    }
    if (i + extra >= text.size()) throw Error(ErrorCode::kParse, "truncated UTF-8 sequence");
    for (int k = 1; k <= extra; ++k) {
      const auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) throw Error(ErrorCode::kParse, "invalid UTF-8 continuation");
      cp = (cp << 6) | (cont & 0x3F);
    }
    static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw Error(ErrorCode::kParse, "invalid UTF-8 code point");
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string EncodeUtf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view code_points) {
  std::string out;
  for (char32_t cp : code_points) out += EncodeUtf8(cp);
  return out;
}

bool IsCombiningMark(char32_t c) {
  // Devanagari U+0900..U+097F
  if ((c >= 0x0900 && c <= 0x0903) || (c >= 0x093A && c <= 0x093C) ||
      (c >= 0x093E && c <= 0x094F) || (c >= 0x0951 && c <= 0x0957) ||
      (c >= 0x0962 && c <= 0x0963)) {
    return true;
  }
  // Tamil U+0B80..U+0BFF
  if (c == 0x0B82 || (c >= 0x0BBE && c <= 0x0BCD) || c == 0x0BD7) return true;
  // Telugu U+0C00..U+0C7F
  if ((c >= 0x0C00 && c <= 0x0C04) || c == 0x0C3C || (c >= 0x0C3E && c <= 0x0C56) ||
      (c >= 0x0C62 && c <= 0x0C63)) {
    return true;
  }
  // Zero-width joiners shape conjuncts and attach like marks.
  return c == 0x200C || c == 0x200D;
}

bool IsPunctuationOrSpace(char32_t c) {
  if (c < 0x80) {
    return !((c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'));
  }
  return c == 0x00A0 || c == 0x0964 || c == 0x0965 ||  // NBSP, danda, double danda
         (c >= 0x2000 && c <= 0x206F && c != 0x200C && c != 0x200D) ||  // general punctuation
         (c >= 0x3000 && c <= 0x303F) || c == 0xFEFF;
}

TargetSequence TextToTargets(std::string_view text, const std::vector<std::string>& vocab,
                             int blank_index) {
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(vocab.size()); ++i) {
    if (i != blank_index) index.emplace(vocab[i], i);
  }

  TargetSequence out;
  auto emit = [&](const std::string& unit) {
    if (auto it = index.find(unit); it != index.end()) {
      out.labels.push_back(it->second);
      out.graphemes.push_back(unit);
      return true;
    }
    return false;
  };

  const std::u32string cps = DecodeUtf8(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (IsPunctuationOrSpace(cps[i])) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < cps.size() && IsCombiningMark(cps[end])) ++end;
    const std::u32string_view cluster(cps.data() + i, end - i);
    if (!emit(EncodeUtf8(cluster))) {
      for (char32_t cp : cluster) {
        if (cp == 0x200C || cp == 0x200D) continue;
        const std::string unit = EncodeUtf8(cp);
        if (!emit(unit)) out.dropped.push_back(unit);
      }
    }
    i = end;
  }
  return out;
}

}  // namespace psp
