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

#ifndef PSP_TEXT_TARGETS_H_
#define PSP_TEXT_TARGETS_H_

#include <string>
#include <string_view>
#include <vector>

namespace psp {

// Throws Error(kParse) on malformed UTF-8.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(char32_t code_point);
std::string EncodeUtf8(std::u32string_view code_points);

// Dependent vowel signs, viramas and other combining marks of the
// Devanagari, Telugu and Tamil blocks.
bool IsCombiningMark(char32_t c);
bool IsPunctuationOrSpace(char32_t c);

struct TargetSequence {
  std::vector<int> labels;               // vocab indices, never the blank
  std::vector<std::string> graphemes;    // vocab strings for `labels`
  std::vector<std::string> dropped;      // units absent from the vocab
};

// Turns native-script text into aligner targets:
//  - punctuation and whitespace are stripped;
//  - a base character followed by combining marks forms one cluster; the
//    cluster becomes a single target when the vocab has it, otherwise each
//    code point becomes its own target;
//  - units absent from the vocab are dropped and reported in `dropped`.
TargetSequence TextToTargets(std::string_view text, const std::vector<std::string>& vocab,
                             int blank_index);

}  // namespace psp

#endif  // PSP_TEXT_TARGETS_H_
