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

#include "frame_lab/optimality.hpp"

namespace frame_lab {

namespace {

struct ConditionName {
  ConditionId id;
  const char* name;
};

constexpr ConditionName kConditionNames[] = {
    {ConditionId::kOneUniform, "one_uniform"},
    {ConditionId::kTwoUniform, "two_uniform"},
    {ConditionId::kSpectralOptimalPairOne, "spectral_optimal_pair_one_erasure"},
    {ConditionId::kSpectralOptimalPairTwo, "spectral_optimal_pair_two_erasure"},
    {ConditionId::kCanonicalSpectralOne, "canonical_spectral_one_erasure"},
    {ConditionId::kCanonicalNormOne, "canonical_norm_one_erasure"},
    {ConditionId::kCanonicalSpectralTwo, "canonical_spectral_two_erasure"},
    {ConditionId::kTwoErasurePrediction, "two_erasure_from_one_erasure"},
    {ConditionId::kNormOptimalPairOne, "norm_optimal_pair_one_erasure"},
    {ConditionId::kUniformParseval, "probabilistic_uniform_parseval"},
    {ConditionId::kParsevalEquivalence, "parseval_spectral_norm_equivalence"},
};

}  // namespace

const char* to_string(ConditionId id) {
  for (const auto& c : kConditionNames)
    if (c.id == id) return c.name;
  return "unknown";
}

ConditionId condition_id_from_string(const std::string& s) {
  for (const auto& c : kConditionNames)
    if (s == c.name) return c.id;
  throw Error(ErrorCode::kInvalidArgument, "unknown condition '" + s + "'");
}

OptimalValues optimal_values(const ProbabilityProfile& profile) {
  const Index count = profile.count();
  if (count < 2) throw Error(ErrorCode::kDegenerateDenominator, "two-erasure values need at least two vectors");
  const double n = double(profile.dim());
  double sum_q = 0;
  double sum_inv_sq = 0;
  for (Index i = 0; i < count; ++i) {
    sum_q += 1.0 / profile.weight(i);
    sum_inv_sq += 1.0 / (profile.weight(i) * profile.weight(i));
  }
  OptimalValues v;
  v.beta = n - sum_inv_sq;
  // sum_{i != j} 1/(q_i q_j) = (sum 1/q_i)^2 - sum 1/q_i^2
  v.cross_weight_sum = sum_q * sum_q - sum_inv_sq;
  if (!(v.cross_weight_sum > 0))
    throw Error(ErrorCode::kDegenerateDenominator, "cross weight sum is not positive");
  v.two_erasure_target = v.beta / v.cross_weight_sum;
  if (v.beta >= 0) {
    v.zeta2 = 1 + std::sqrt(v.two_erasure_target);
  } else {
    const double denom = n * n - sum_inv_sq;
    if (!(denom > 0)) throw Error(ErrorCode::kDegenerateDenominator, "n^2 - sum 1/q_i^2 is not positive");
    v.zeta2 = std::sqrt((n * n - n) / denom);
  }
  return v;
}

}  // namespace frame_lab
