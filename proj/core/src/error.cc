// Copyright 2026 The Trajcast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajcast/error.h"

#include <string>

namespace trajcast {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMissingTargetFrame: return "MissingTargetFrame";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptyOverlap: return "EmptyOverlap";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kEmptyHistory: return "EmptyHistory";
    case ErrorCode::kStaleTrace: return "StaleTrace";
    case ErrorCode::kInvalidShift: return "InvalidShift";
    case ErrorCode::kUnknownScenario: return "UnknownScenario";
    case ErrorCode::kTooFewTrajectories: return "TooFewTrajectories";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kMissingAgent: return "MissingAgent";
    case ErrorCode::kWrongFrameCount: return "WrongFrameCount";
    case ErrorCode::kInsufficientFrames: return "InsufficientFrames";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace trajcast
