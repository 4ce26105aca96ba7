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

#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace frame_lab::cli {

namespace {

void emit_float(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
  if (std::string_view(buf).find_first_of(".eE") == std::string_view::npos) out += ".0";
}

void emit(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(key).dump();
        out += ": ";
        emit(value, depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_object() || (e.is_array() && !e.empty() && (e[0].is_array() || e[0].is_object()));
      });
      out += "[";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += "\n" + pad;
        first = false;
        emit(value, depth + 1, out);
      }
      if (!flat) out += "\n" + close;
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      emit_float(j.get<double>(), out);
      return;
    default:
      out += j.dump();
  }
}

Json sets_to_json(const std::vector<ErasureSet>& sets) {
  Json a = Json::array();
  for (const auto& s : sets) a.push_back(to_json(s));
  return a;
}

std::vector<std::uint64_t> u64_vector(const Json& j) { return j.get<std::vector<std::uint64_t>>(); }

}  // namespace

std::string emit_json(const Json& doc) {
  std::string out;
  emit(doc, 0, out);
  out += "\n";
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_string(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

Json to_json(const ProbabilityProfile& profile) {
  const auto props = weight_properties_report(profile);
  Json j;
  j["probabilities"] = profile.probabilities();
  j["weights"] = profile.weights();
  j["reciprocal_sum"] = profile.reciprocal_sum();
  j["reciprocal_sum_residual"] = props.reciprocal_sum_residual;
  j["min_weight"] = props.min_weight;
  j["all_at_least_one"] = props.all_at_least_one;
  j["monotone"] = props.monotone;
  return j;
}

Json to_json(const ErasureSet& set) { return Json(set.indices); }

ErasureSet erasure_set_from_json(const Json& j) { return ErasureSet{j.get<std::vector<Index>>()}; }

Json to_json(const ErasureMeasureReport& r) {
  Json j;
  j["measure"] = to_string(r.kind);
  j["m"] = r.m;
  j["value"] = r.value;
  j["argmax_sets"] = sets_to_json(r.argmax_sets);
  Json per = Json::array();
  for (const auto& [set, value] : r.per_set_values) per.push_back(Json{{"set", to_json(set)}, {"value", value}});
  j["per_set_values"] = std::move(per);
  if (r.cross_check_residual) j["cross_check_residual"] = *r.cross_check_residual;
  return j;
}

ErasureMeasureReport measure_report_from_json(const Json& j) {
  ErasureMeasureReport r;
  r.kind = measure_kind_from_string(j.at("measure").get<std::string>());
  r.m = j.at("m").get<Index>();
  r.value = j.at("value").get<double>();
  for (const auto& s : j.at("argmax_sets")) r.argmax_sets.push_back(erasure_set_from_json(s));
  for (const auto& e : j.at("per_set_values"))
    r.per_set_values.emplace_back(erasure_set_from_json(e.at("set")), e.at("value").get<double>());
  if (j.contains("cross_check_residual")) r.cross_check_residual = j["cross_check_residual"].get<double>();
  return r;
}

Json to_json(const OptimalityCertificate& cert) {
  Json j;
  j["condition_id"] = to_string(cert.id);
  Json hyps = Json::array();
  for (const auto& h : cert.hypotheses)
    hyps.push_back(Json{{"description", h.description}, {"holds", h.holds}, {"witness", h.witness}});
  j["hypotheses"] = std::move(hyps);
  j["conclusion"] = cert.conclusion ? Json(*cert.conclusion) : Json(nullptr);
  if (cert.value) j["value"] = *cert.value;
  Json details = Json::object();
  for (const auto& [k, v] : cert.details) details[k] = v;
  j["details"] = std::move(details);
  j["notes"] = cert.notes;
  return j;
}

OptimalityCertificate certificate_from_json(const Json& j) {
  OptimalityCertificate cert;
  cert.id = condition_id_from_string(j.at("condition_id").get<std::string>());
  for (const auto& h : j.at("hypotheses"))
    cert.hypotheses.push_back(
        {h.at("description").get<std::string>(), h.at("holds").get<bool>(), h.at("witness").get<double>()});
  if (!j.at("conclusion").is_null()) cert.conclusion = j["conclusion"].get<bool>();
  if (j.contains("value")) cert.value = j["value"].get<double>();
  for (const auto& [k, v] : j.at("details").items()) cert.details.emplace_back(k, v.get<double>());
  cert.notes = j.at("notes").get<std::vector<std::string>>();
  return cert;
}

Json to_json(const PartitionReport& p) {
  Json j;
  j["c"] = p.c;
  j["upsilon1"] = p.upsilon1;
  j["upsilon2"] = p.upsilon2;
  j["dim_h1"] = p.dim_h1;
  j["dim_h2"] = p.dim_h2;
  j["dim_intersection"] = p.dim_intersection;
  return j;
}

PartitionReport partition_from_json(const Json& j) {
  PartitionReport p;
  p.c = j.at("c").get<double>();
  p.upsilon1 = j.at("upsilon1").get<std::vector<Index>>();
  p.upsilon2 = j.at("upsilon2").get<std::vector<Index>>();
  p.dim_h1 = j.at("dim_h1").get<Index>();
  p.dim_h2 = j.at("dim_h2").get<Index>();
  p.dim_intersection = j.at("dim_intersection").get<Index>();
  return p;
}

Json to_json(const OptimalValues& v) {
  Json j;
  j["zeta1"] = v.zeta1;
  j["zeta2"] = v.zeta2;
  j["epsilon1"] = v.epsilon1;
  j["beta"] = v.beta;
  j["cross_weight_sum"] = v.cross_weight_sum;
  j["two_erasure_target"] = v.two_erasure_target;
  return j;
}

OptimalValues optimal_values_from_json(const Json& j) {
  OptimalValues v;
  v.zeta1 = j.at("zeta1").get<double>();
  v.zeta2 = j.at("zeta2").get<double>();
  v.epsilon1 = j.at("epsilon1").get<double>();
  v.beta = j.at("beta").get<double>();
  v.cross_weight_sum = j.at("cross_weight_sum").get<double>();
  v.two_erasure_target = j.at("two_erasure_target").get<double>();
  return v;
}

Json to_json(const SimulationStats& s) {
  Json j;
  j["m"] = s.m;
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["algorithm"] = s.algorithm;
  j["max_error"] = s.max_error;
  j["mean_error"] = s.mean_error;
  j["bound"] = s.bound;
  j["exceed_count"] = s.exceed_count;
  j["within_bound"] = s.exceed_count == 0;
  j["histogram"] = s.histogram;
  return j;
}

SimulationStats simulation_from_json(const Json& j) {
  SimulationStats s;
  s.m = j.at("m").get<Index>();
  s.trials = j.at("trials").get<std::uint64_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.algorithm = j.at("algorithm").get<std::string>();
  s.max_error = j.at("max_error").get<double>();
  s.mean_error = j.at("mean_error").get<double>();
  s.bound = j.at("bound").get<double>();
  s.exceed_count = j.at("exceed_count").get<std::uint64_t>();
  s.histogram = u64_vector(j.at("histogram"));
  return s;
}

}  // namespace frame_lab::cli
