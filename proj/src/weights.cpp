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

#include "frame_lab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace frame_lab {

ProbabilityProfile::ProbabilityProfile(std::vector<double> probabilities, Index dim)
    : p_(std::move(probabilities)), dim_(dim) {
  const auto big_n = static_cast<Index>(p_.size());
  if (dim_ < 1 || big_n < dim_)
    throw Error(ErrorCode::kInvalidProbability,
                "need N >= n >= 1, got N=" + std::to_string(big_n) + " n=" + std::to_string(dim_));
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!std::isfinite(p_[i]) || p_[i] < 0 || p_[i] > 1)
      throw Error(ErrorCode::kInvalidProbability, "p[" + std::to_string(i) + "] outside [0, 1]");
  }
  const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (std::abs(total - 1) > tolerance::kProbabilitySum)
    throw Error(ErrorCode::kInvalidProbability, "probabilities sum to " + std::to_string(total));
  const double scale = double(big_n - 1) / double(dim_);
  q_.resize(p_.size());
  for (std::size_t i = 0; i < p_.size(); ++i) {
    const double rest = total - p_[i];
    if (p_[i] >= 1 || !(rest > 0))
      throw Error(ErrorCode::kDegenerateWeight, "p[" + std::to_string(i) + "] = 1 gives an infinite weight");
    q_[i] = total / rest * scale;
  }
  // N == 1 forces p = (1) and is rejected above, so scale > 0 here.
  const double residual = std::abs(reciprocal_sum() - double(dim_));
  if (residual > 1e-10 * double(dim_))
    throw Error(ErrorCode::kInvalidProbability, "reciprocal weight sum off by " + std::to_string(residual));
}

double ProbabilityProfile::reciprocal_sum() const {
  double s = 0;
  for (double q : q_) s += 1 / q;
  return s;
}

ProbabilityProfile weights_from_probabilities(const std::vector<double>& p, Index dim) {
  return ProbabilityProfile(p, dim);
}

ProbabilityProfile uniform_profile(Index count, Index dim) {
  return ProbabilityProfile(std::vector<double>(static_cast<std::size_t>(count), 1.0 / double(count)), dim);
}

WeightPropertiesReport weight_properties_report(const ProbabilityProfile& profile) {
  WeightPropertiesReport r;
  const auto& q = profile.weights();
  const auto& p = profile.probabilities();
  r.min_weight = *std::min_element(q.begin(), q.end());
  r.all_at_least_one = r.min_weight >= 1;
  r.reciprocal_sum_residual = std::abs(profile.reciprocal_sum() - double(profile.dim()));
  r.monotone = true;
  for (Index i = 0; i < profile.count(); ++i) {
    for (Index j = 0; j < profile.count(); ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      if (!(p[ui] > p[uj])) continue;
      const bool holds = q[ui] > q[uj];
      r.monotonicity.push_back({i, j, holds});
      r.monotone = r.monotone && holds;
    }
  }
  return r;
}

}  // namespace frame_lab
