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

// Frame input files:
//
//   {"dim": 2, "count": 3, "field": "real",
//    "vectors": [[[1, 0], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [1, 0]]],
//    "probabilities": [0.25, 0.25, 0.5]}
//
// Every entry is an [re, im] pair, also for real frames. Probabilities are optional
// here and may come from a separate file instead.

#ifndef FRAME_LAB_TOOLS_FRAME_FILE_HPP_
#define FRAME_LAB_TOOLS_FRAME_FILE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "frame_lab/common.hpp"
#include "report.hpp"

namespace frame_lab::cli {

struct FrameFile {
  Index dim = 0;
  Index count = 0;
  bool complex_field = false;
  MatrixX<cplx> synthesis;  // dim x count
  std::optional<std::vector<double>> probabilities;
};

/// Throws Error(kParseError) on malformed documents.
FrameFile parse_frame_file(const Json& doc);
FrameFile parse_frame_file_text(const std::string& text);

/// Accepts a bare array or an object with a "probabilities" array.
std::vector<double> parse_probabilities(const Json& doc);

std::string read_text_file(const std::string& path);

struct ResolvedInput {
  FrameFile frame;
  std::vector<double> probabilities;
  std::vector<std::string> warnings;
};

/// Loads the frame file and picks the probabilities; a separate file wins over the
/// inline list, with a warning when both are present and differ.
ResolvedInput load_input(const std::string& frame_path, const std::optional<std::string>& probabilities_path);
ResolvedInput resolve_input(FrameFile frame, const std::optional<std::vector<double>>& separate);

/// Canonical description of the input, the basis of the report digest.
Json input_to_json(const ResolvedInput& input);

FrameFile frame_file_from(const MatrixX<cplx>& synthesis, bool complex_field,
                          std::optional<std::vector<double>> probabilities = std::nullopt);

}  // namespace frame_lab::cli

#endif  // FRAME_LAB_TOOLS_FRAME_FILE_HPP_
