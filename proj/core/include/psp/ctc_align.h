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

#ifndef PSP_CTC_ALIGN_H_
#define PSP_CTC_ALIGN_H_

#include <span>
#include <string>
#include <vector>

#include "psp/types.h"

namespace psp {

struct UtteranceBundle;
struct TargetSequence;

// Frame interval [start_frame, end_frame) owned by one target grapheme.
struct AlignmentSpan {
  int target_index = 0;
  int label = 0;
  std::string grapheme;
  int start_frame = 0;
  int end_frame = 0;
  // Mean log-probability of `label` over the span's frames.
  double score = 0.0;

  int frames() const { return end_frame - start_frame; }
};

struct Alignment {
  std::vector<AlignmentSpan> spans;
  // Log-probability of the whole Viterbi path, blank frames included.
  double path_log_prob = 0.0;
  // Label emitted at every frame along the path.
  std::vector<int> frame_labels;
};

// Smallest T for which a CTC path over `targets` exists: one frame per target
// plus one blank between each pair of equal neighbours.
int MinimumCtcFrames(std::span<const int> targets);

// Viterbi forced alignment over the blank-interleaved target sequence.
// Allowed moves are stay, advance by one, and skip a blank between
// distinct labels. Blank frames are left out of every span.
//
// Throws Error(kBadTargetIndex) for out-of-range or blank targets and
// Error(kInfeasibleLength) when T < MinimumCtcFrames(targets).
Alignment ForceAlign(const Matrix& emissions, std::span<const int> targets, int blank_index);

// ForceAlign against the bundle's emissions, with grapheme strings filled in.
Alignment AlignBundle(const UtteranceBundle& bundle, const TargetSequence& targets);

// Per-frame argmax; ties go to the lowest index.
std::vector<int> GreedyFrames(const Matrix& emissions);

// Mean of embedding rows [start_frame, end_frame). Throws kSpanOutOfRange.
Vector SpanEmbedding(const Matrix& embeddings, const AlignmentSpan& span);

}  // namespace psp

#endif  // PSP_CTC_ALIGN_H_
