// Copyright 2026 The Frame Lab Authors. All Rights Reserved.
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

#include "frame_lab/common.hpp"

namespace frame_lab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSpanning: return "NotSpanning";
    case ErrorCode::kIllConditioned: return "IllConditioned";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotDual: return "NotDual";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kDegenerateWeight: return "DegenerateWeight";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEigenFailure: return "EigenFailure";
    case ErrorCode::kSvdFailure: return "SvdFailure";
    case ErrorCode::kCombinatorialLimit: return "CombinatorialLimit";
    case ErrorCode::kInsufficientSupport: return "InsufficientSupport";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kNotInDelta1: return "NotInDelta1";
    case ErrorCode::kHypothesisFailed: return "HypothesisFailed";
    case ErrorCode::kNotParseval: return "NotParseval";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

bool Error::is_input_error() const noexcept {
  switch (code_) {
    case ErrorCode::kEigenFailure:
    case ErrorCode::kSvdFailure:
    case ErrorCode::kIllConditioned:
    case ErrorCode::kCombinatorialLimit:
      return false;
    default:
      return true;
  }
}

}  // namespace frame_lab
