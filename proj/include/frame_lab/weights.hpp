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

#ifndef FRAME_LAB_WEIGHTS_HPP_
#define FRAME_LAB_WEIGHTS_HPP_

#include <vector>

#include <Eigen/Dense>

#include "frame_lab/common.hpp"

namespace frame_lab {

/// Erasure probabilities p_i of the N transmitted coefficients and the weight numbers
///
///   q_i = (sum_j p_j / (sum_j p_j - p_i)) * (N - 1) / n
///
/// which scale the contribution of an erased coefficient to the reconstruction error.
class ProbabilityProfile {
 public:
  /// Throws kInvalidProbability or kDegenerateWeight; see weights_from_probabilities.
  ProbabilityProfile(std::vector<double> probabilities, Index dim);

  Index dim() const { return dim_; }
  Index count() const { return static_cast<Index>(p_.size()); }

  const std::vector<double>& probabilities() const { return p_; }
  const std::vector<double>& weights() const { return q_; }
  double probability(Index i) const { return p_[static_cast<std::size_t>(i)]; }
  double weight(Index i) const { return q_[static_cast<std::size_t>(i)]; }

  Eigen::VectorXd weight_vector() const { return Eigen::Map<const Eigen::VectorXd>(q_.data(), count()); }

  /// sum_i 1 / q_i, which equals n for every valid profile.
  double reciprocal_sum() const;

  friend bool operator==(const ProbabilityProfile&, const ProbabilityProfile&) = default;

 private:
  std::vector<double> p_;
  std::vector<double> q_;
  Index dim_;
};

ProbabilityProfile weights_from_probabilities(const std::vector<double>& p, Index dim);

/// Uniform erasure probabilities 1/N.
ProbabilityProfile uniform_profile(Index count, Index dim);

struct MonotonicityEntry {
  Index more_likely;  // index with the larger probability
  Index less_likely;
  bool holds;         // the weight of `more_likely` is strictly larger
};

struct WeightPropertiesReport {
  double min_weight = 0;
  bool all_at_least_one = false;   // may fail when N == n
  double reciprocal_sum_residual = 0;
  bool monotone = false;
  std::vector<MonotonicityEntry> monotonicity;
};

WeightPropertiesReport weight_properties_report(const ProbabilityProfile& profile);

}  // namespace frame_lab

#endif  // FRAME_LAB_WEIGHTS_HPP_
