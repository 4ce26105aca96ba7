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

// Small frames with known closed-form answers, used by the examples command and the
// acceptance checks.

#ifndef FRAME_LAB_TOOLS_REFERENCE_FRAMES_HPP_
#define FRAME_LAB_TOOLS_REFERENCE_FRAMES_HPP_

#include <cmath>
#include <vector>

#include "frame_lab/frame.hpp"
#include "frame_lab/weights.hpp"

namespace frame_lab::reference {

/// {(1,0), (0,1), (1,1)} with erasure probabilities (1/4, 1/4, 1/2).
inline FrameXd oblique_frame() { return build_frame<double>(2, std::vector<std::vector<double>>{{1, 0}, {0, 1}, {1, 1}}); }
inline ProbabilityProfile oblique_profile() { return ProbabilityProfile({0.25, 0.25, 0.5}, 2); }

/// A dual of the oblique frame that beats the canonical one: the canonical dual plus
/// (1/6)(1,1)^T (1,1,-1), i.e. {(5/6,-1/6), (-1/6,5/6), (1/6,1/6)}.
inline DualPair<double> oblique_improved_pair() {
  const auto f = oblique_frame();
  MatrixX<double> g = canonical_dual(f).dual().synthesis();
  Eigen::Vector2d shift(1.0 / 6, 1.0 / 6);
  Eigen::RowVector3d pattern(1, 1, -1);
  g += shift * pattern;
  return DualPair<double>(f, FrameXd(g));
}

/// {(1,0), (0,1), (1,1), (1,-1)}, tight with bound 3, probabilities (1/2, 1/2, 0, 0).
inline FrameXd tight_frame() {
  return build_frame<double>(2, std::vector<std::vector<double>>{{1, 0}, {0, 1}, {1, 1}, {1, -1}});
}
inline ProbabilityProfile tight_profile() { return ProbabilityProfile({0.5, 0.5, 0, 0}, 2); }

/// Three unit vectors at mutual angle 120 degrees in the plane.
inline FrameXd mercedes_benz_frame() {
  const double h = std::sqrt(3.0) / 2;
  return build_frame<double>(2, std::vector<std::vector<double>>{{0, 1}, {-h, -0.5}, {h, -0.5}});
}

}  // namespace frame_lab::reference

#endif  // FRAME_LAB_TOOLS_REFERENCE_FRAMES_HPP_
