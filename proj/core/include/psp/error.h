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

#ifndef PSP_ERROR_H_
#define PSP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace psp {

enum class ErrorCode {
  kIo,
  kParse,
  kInvalidArgument,
  // Tensor files.
  kBadMagic,
  kUnsupportedVersion,
  kBadHeader,
  kTruncatedPayload,
  kTrailingBytes,
  kDimOverflow,
  // Dimension tables.
  kOverlappingSets,
  kMissingCognate,
  kUnknownLanguage,
  kNotApplicable,
  // Alignment.
  kInfeasibleLength,
  kBadTargetIndex,
  kSpanOutOfRange,
  // Centroids and banks.
  kTooFewSpeakers,
  kCapExceeded,
  kLanguageMismatch,
  // Probes.
  kZeroVector,
  kEmptyTokens,
  kDegenerateFloor,
  // Distributional.
  kTooFewSamples,
  kDimensionMismatch,
  kEigenFailure,
  kTooFewIntervals,
  kNonPositiveInterval,
  kNoVoicedFrames,
  kTooFewSpans,
  // Bootstrap.
  kEmptyInput,
  // Orchestration.
  kValidation,
  kOverlapWithCentroidCorpus,
};

std::string_view ErrorCodeName(ErrorCode code);

// The single exception type thrown by the library. what() is prefixed with
// the code name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace psp

#endif  // PSP_ERROR_H_
