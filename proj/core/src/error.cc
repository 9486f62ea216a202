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

#include "psp/error.h"

namespace psp {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kBadHeader: return "BadHeader";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kTrailingBytes: return "TrailingBytes";
    case ErrorCode::kDimOverflow: return "DimOverflow";
    case ErrorCode::kOverlappingSets: return "OverlappingSets";
    case ErrorCode::kMissingCognate: return "MissingCognate";
    case ErrorCode::kUnknownLanguage: return "UnknownLanguage";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kInfeasibleLength: return "InfeasibleLength";
    case ErrorCode::kBadTargetIndex: return "BadTargetIndex";
    case ErrorCode::kSpanOutOfRange: return "SpanOutOfRange";
    case ErrorCode::kTooFewSpeakers: return "TooFewSpeakers";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kLanguageMismatch: return "LanguageMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kEmptyTokens: return "EmptyTokens";
    case ErrorCode::kDegenerateFloor: return "DegenerateFloor";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEigenFailure: return "EigenFailure";
    case ErrorCode::kTooFewIntervals: return "TooFewIntervals";
    case ErrorCode::kNonPositiveInterval: return "NonPositiveInterval";
    case ErrorCode::kNoVoicedFrames: return "NoVoicedFrames";
    case ErrorCode::kTooFewSpans: return "TooFewSpans";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kValidation: return "Validation";
    case ErrorCode::kOverlapWithCentroidCorpus: return "OverlapWithCentroidCorpus";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message), code_(code) {}

}  // namespace psp
