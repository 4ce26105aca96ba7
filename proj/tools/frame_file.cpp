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

#include "frame_file.hpp"

#include <fstream>
#include <sstream>

namespace frame_lab::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

Index positive_int(const Json& doc, const char* key) {
  if (!doc.contains(key)) fail(std::string("missing \"") + key + "\"");
  const auto& v = doc[key];
  if (!v.is_number_integer() || v.get<long long>() < 1) fail(std::string("\"") + key + "\" must be a positive integer");
  return v.get<Index>();
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " is not a number");
  return v.get<double>();
}

}  // namespace

FrameFile parse_frame_file(const Json& doc) {
  if (!doc.is_object()) fail("frame file must be a JSON object");
  FrameFile f;
  f.dim = positive_int(doc, "dim");
  f.count = positive_int(doc, "count");
  const std::string field = doc.value("field", std::string("complex"));
  if (field != "real" && field != "complex") fail("\"field\" must be \"real\" or \"complex\"");
  f.complex_field = field == "complex";
  if (!doc.contains("vectors") || !doc["vectors"].is_array()) fail("missing \"vectors\" array");
  const auto& rows = doc["vectors"];
  if (static_cast<Index>(rows.size()) != f.count)
    fail("\"vectors\" has " + std::to_string(rows.size()) + " rows, count is " + std::to_string(f.count));
  f.synthesis.resize(f.dim, f.count);
  for (Index i = 0; i < f.count; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != f.dim)
      fail("vector " + std::to_string(i) + " must have " + std::to_string(f.dim) + " entries");
    for (Index r = 0; r < f.dim; ++r) {
      const auto& e = row[static_cast<std::size_t>(r)];
      const std::string where = "entry [" + std::to_string(i) + "][" + std::to_string(r) + "]";
      if (!e.is_array() || e.size() != 2) fail(where + " must be an [re, im] pair");
      const double re = number(e[0], where);
      const double im = number(e[1], where);
      if (!f.complex_field && im != 0) fail(where + " has an imaginary part in a real frame");
      f.synthesis(r, i) = cplx(re, im);
    }
  }
  if (doc.contains("probabilities")) {
    auto p = parse_probabilities(doc["probabilities"]);
    if (static_cast<Index>(p.size()) != f.count) fail("\"probabilities\" length differs from count");
    f.probabilities = std::move(p);
  }
  return f;
}

FrameFile parse_frame_file_text(const std::string& text) { return parse_frame_file(parse_json(text)); }

std::vector<double> parse_probabilities(const Json& doc) {
  const Json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("probabilities")) fail("missing \"probabilities\"");
    list = &doc["probabilities"];
  }
  if (!list->is_array()) fail("probabilities must be an array");
  std::vector<double> p;
  for (std::size_t i = 0; i < list->size(); ++i) p.push_back(number((*list)[i], "probability " + std::to_string(i)));
  return p;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ResolvedInput resolve_input(FrameFile frame, const std::optional<std::vector<double>>& separate) {
  ResolvedInput in;
  if (separate) {
    if (static_cast<Index>(separate->size()) != frame.count)
      throw Error(ErrorCode::kLengthMismatch, "probability file has " + std::to_string(separate->size()) +
                                                  " entries, frame has " + std::to_string(frame.count));
    if (frame.probabilities && *frame.probabilities != *separate)
      in.warnings.push_back("probabilities in the frame file are overridden by the separate probability file");
    in.probabilities = *separate;
  } else if (frame.probabilities) {
    in.probabilities = *frame.probabilities;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "no probabilities: add them to the frame file or pass --probabilities");
  }
  in.frame = std::move(frame);
  return in;
}

ResolvedInput load_input(const std::string& frame_path, const std::optional<std::string>& probabilities_path) {
  auto frame = parse_frame_file_text(read_text_file(frame_path));
  std::optional<std::vector<double>> separate;
  if (probabilities_path) separate = parse_probabilities(parse_json(read_text_file(*probabilities_path)));
  return resolve_input(std::move(frame), separate);
}

Json input_to_json(const ResolvedInput& input) {
  Json j;
  j["dim"] = input.frame.dim;
  j["count"] = input.frame.count;
  j["field"] = input.frame.complex_field ? "complex" : "real";
  j["vectors"] = vectors_to_json(input.frame.synthesis);
  j["probabilities"] = input.probabilities;
  return j;
}

FrameFile frame_file_from(const MatrixX<cplx>& synthesis, bool complex_field,
                          std::optional<std::vector<double>> probabilities) {
  FrameFile f;
  f.dim = synthesis.rows();
  f.count = synthesis.cols();
  f.complex_field = complex_field;
  f.synthesis = synthesis;
  f.probabilities = std::move(probabilities);
  return f;
}

}  // namespace frame_lab::cli
