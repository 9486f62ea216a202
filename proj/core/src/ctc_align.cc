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

#include "psp/ctc_align.h"

#include <limits>

#include "psp/bundle.h"
#include "psp/error.h"
#include "psp/text_targets.h"

namespace psp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

int MinimumCtcFrames(std::span<const int> targets) {
  int frames = static_cast<int>(targets.size());
  for (std::size_t i = 1; i < targets.size(); ++i) {
    if (targets[i] == targets[i - 1]) ++frames;
  }
  return frames;
}

Alignment ForceAlign(const Matrix& emissions, std::span<const int> targets, int blank_index) {
  const int frames = static_cast<int>(emissions.rows());
  const int vocab = static_cast<int>(emissions.cols());
  if (targets.empty()) throw Error(ErrorCode::kBadTargetIndex, "empty target sequence");
  if (blank_index < 0 || blank_index >= vocab) {
    throw Error(ErrorCode::kBadTargetIndex, "blank index out of range");
  }
  for (int label : targets) {
    if (label < 0 || label >= vocab || label == blank_index) {
      throw Error(ErrorCode::kBadTargetIndex, "target label " + std::to_string(label) +
                                                  " is out of range or blank");
    }
  }
  const int required = MinimumCtcFrames(targets);
  if (frames < required) {
    throw Error(ErrorCode::kInfeasibleLength, std::to_string(frames) + " frames < required " +
                                                  std::to_string(required));
  }

  // Extended sequence: blank, t0, blank, t1, ..., t_{L-1}, blank.
  const int states = 2 * static_cast<int>(targets.size()) + 1;
  auto label_of = [&](int s) { return (s % 2 == 0) ? blank_index : targets[s / 2]; };

  std::vector<double> score(static_cast<std::size_t>(frames) * states, kNegInf);
  std::vector<int> back(static_cast<std::size_t>(frames) * states, -1);
  auto at = [states](int t, int s) { return static_cast<std::size_t>(t) * states + s; };

  score[at(0, 0)] = emissions(0, blank_index);
  score[at(0, 1)] = emissions(0, targets[0]);
  for (int t = 1; t < frames; ++t) {
    for (int s = 0; s < states; ++s) {
      // Preference on exact ties: stay, then advance by one, then skip.
      double best = score[at(t - 1, s)];
      int from = s;
      if (s >= 1 && score[at(t - 1, s - 1)] > best) {
        best = score[at(t - 1, s - 1)];
        from = s - 1;
      }
      if (s >= 2 && s % 2 == 1 && label_of(s) != label_of(s - 2) &&
          score[at(t - 1, s - 2)] > best) {
        best = score[at(t - 1, s - 2)];
        from = s - 2;
      }
      if (best == kNegInf) continue;
      score[at(t, s)] = best + emissions(t, label_of(s));
      back[at(t, s)] = from;
    }
  }

  int state = states - 1;
  if (score[at(frames - 1, states - 2)] > score[at(frames - 1, states - 1)]) state = states - 2;
  Alignment result;
  result.path_log_prob = score[at(frames - 1, state)];
  if (result.path_log_prob == kNegInf) {
    throw Error(ErrorCode::kInfeasibleLength, "no path with finite probability");
  }

  std::vector<int> path(frames);
  for (int t = frames - 1; t >= 0; --t) {
    path[t] = state;
    if (t > 0) state = back[at(t, state)];
  }

  result.frame_labels.resize(frames);
  result.spans.resize(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    result.spans[i].target_index = static_cast<int>(i);
    result.spans[i].label = targets[i];
    result.spans[i].start_frame = -1;
  }
  for (int t = 0; t < frames; ++t) {
    const int s = path[t];
    result.frame_labels[t] = label_of(s);
    if (s % 2 == 0) continue;
    AlignmentSpan& span = result.spans[s / 2];
    if (span.start_frame < 0) span.start_frame = t;
    span.end_frame = t + 1;
    span.score += emissions(t, span.label);
  }
  for (AlignmentSpan& span : result.spans) span.score /= span.frames();
  return result;
}

Alignment AlignBundle(const UtteranceBundle& bundle, const TargetSequence& targets) {
  Alignment alignment = ForceAlign(bundle.emissions, targets.labels, bundle.blank_index);
  for (AlignmentSpan& span : alignment.spans) span.grapheme = targets.graphemes[span.target_index];
  return alignment;
}

std::vector<int> GreedyFrames(const Matrix& emissions) {
  std::vector<int> labels(emissions.rows());
  for (Eigen::Index t = 0; t < emissions.rows(); ++t) {
    Eigen::Index best = 0;
    for (Eigen::Index v = 1; v < emissions.cols(); ++v) {
      if (emissions(t, v) > emissions(t, best)) best = v;
    }
    labels[t] = static_cast<int>(best);
  }
  return labels;
}

Vector SpanEmbedding(const Matrix& embeddings, const AlignmentSpan& span) {
  if (span.start_frame < 0 || span.end_frame > embeddings.rows() ||
      span.start_frame >= span.end_frame) {
    throw Error(ErrorCode::kSpanOutOfRange,
                "span [" + std::to_string(span.start_frame) + ", " +
                    std::to_string(span.end_frame) + ") outside " +
                    std::to_string(embeddings.rows()) + " frames");
  }
  return embeddings.middleRows(span.start_frame, span.frames()).colwise().mean().transpose();
}

}  // namespace psp
