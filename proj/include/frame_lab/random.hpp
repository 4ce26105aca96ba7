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

#ifndef FRAME_LAB_RANDOM_HPP_
#define FRAME_LAB_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "frame_lab/common.hpp"

namespace frame_lab {

/// Seeded generator whose output stream is fixed by the standard: std::mt19937_64 for
/// the raw bits, 53-bit mantissa fill for uniforms, Box-Muller for normals. The std
/// distributions are implementation-defined and are deliberately not used.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/u53/box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * double(n)) % n; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2 * std::log(u1));
    const double theta = 2 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  template <typename Scalar>
  Scalar normal_scalar() {
    if constexpr (is_complex_v<Scalar>) {
      const double re = normal();
      const double im = normal();
      return Scalar(re, im);
    } else {
      return Scalar(normal());
    }
  }

  template <typename Scalar>
  VectorX<Scalar> normal_vector(Index size) {
    VectorX<Scalar> v(size);
    for (Index i = 0; i < size; ++i) v(i) = normal_scalar<Scalar>();
    return v;
  }

  /// Uniform on the unit sphere of the (real or complex) space of the given size.
  template <typename Scalar>
  VectorX<Scalar> unit_vector(Index size) {
    VectorX<Scalar> v;
    do {
      v = normal_vector<Scalar>(size);
    } while (v.norm() == 0);
    return v / v.norm();
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace frame_lab

#endif  // FRAME_LAB_RANDOM_HPP_
