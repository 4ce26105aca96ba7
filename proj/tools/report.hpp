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

// JSON report documents: a deterministic emitter that writes every floating value with
// 17 significant digits, plus conversions for the library result types.

#ifndef FRAME_LAB_TOOLS_REPORT_HPP_
#define FRAME_LAB_TOOLS_REPORT_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "frame_lab/common.hpp"
#include "frame_lab/dual_search.hpp"
#include "frame_lab/erasure.hpp"
#include "frame_lab/frame.hpp"
#include "frame_lab/optimality.hpp"
#include "frame_lab/weights.hpp"

namespace frame_lab::cli {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON; floats as %.17g, always carrying a decimal point or exponent so
/// they parse back as floats. Non-finite floats become null.
std::string emit_json(const Json& doc);

/// Throws Error(kParseError).
Json parse_json(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_string(std::string_view bytes);

template <typename Scalar>
Json scalar_to_json(const Scalar& s) {
  if constexpr (is_complex_v<Scalar>)
    return Json::array({double(s.real()), double(s.imag())});
  else
    return Json::array({double(s), 0.0});
}

/// One row per column of the synthesis matrix, each entry [re, im].
template <typename Scalar>
Json vectors_to_json(const MatrixX<Scalar>& synthesis) {
  Json rows = Json::array();
  for (Index i = 0; i < synthesis.cols(); ++i) {
    Json row = Json::array();
    for (Index r = 0; r < synthesis.rows(); ++r) row.push_back(scalar_to_json(synthesis(r, i)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Scalar>
Json coefficients_to_json(const VectorX<Scalar>& c) {
  Json out = Json::array();
  for (Index k = 0; k < c.size(); ++k) out.push_back(scalar_to_json(c(k)));
  return out;
}

Json to_json(const ProbabilityProfile& profile);
Json to_json(const ErasureSet& set);
Json to_json(const ErasureMeasureReport& report);
Json to_json(const OptimalityCertificate& cert);
Json to_json(const PartitionReport& partition);
Json to_json(const OptimalValues& values);
Json to_json(const SimulationStats& stats);

ErasureSet erasure_set_from_json(const Json& j);
ErasureMeasureReport measure_report_from_json(const Json& j);
OptimalityCertificate certificate_from_json(const Json& j);
PartitionReport partition_from_json(const Json& j);
OptimalValues optimal_values_from_json(const Json& j);
SimulationStats simulation_from_json(const Json& j);

template <typename Scalar>
Json to_json(const SearchResult<Scalar>& r, SearchMethod method) {
  Json j;
  j["measure"] = to_string(r.kind);
  j["method"] = to_string(method);
  j["best_value"] = r.best_value;
  j["canonical_value"] = r.canonical_value;
  j["gap"] = r.gap;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["restart_spread"] = r.restart_spread;
  j["unique_dual"] = r.unique_dual;
  if (r.unique_dual) j["notice"] = "unique dual: the frame is a basis, so the canonical dual is the only dual";
  j["dual_residual"] = dual_residual(r.best_dual.frame(), r.best_dual.dual());
  j["best_dual"] = vectors_to_json(r.best_dual.dual().synthesis());
  j["coefficients"] = coefficients_to_json(r.best_coefficients);
  return j;
}

}  // namespace frame_lab::cli

#endif  // FRAME_LAB_TOOLS_REPORT_HPP_
