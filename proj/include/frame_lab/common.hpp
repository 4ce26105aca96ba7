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

#ifndef FRAME_LAB_COMMON_HPP_
#define FRAME_LAB_COMMON_HPP_

#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

namespace frame_lab {

using Index = Eigen::Index;
using cplx = std::complex<double>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

/// Default tolerances shared by every module.
namespace tolerance {
inline constexpr double kRank = 1e-10;        // relative to the largest singular value
inline constexpr double kCondition = 1e12;    // frame operator condition number cap
inline constexpr double kHermitian = 1e-12;   // relative
inline constexpr double kProbabilitySum = 1e-12;
inline constexpr double kDual = 1e-10;
inline constexpr double kTie = 1e-9;
inline constexpr double kCertificate = 1e-9;
}  // namespace tolerance

enum class ErrorCode {
  kDimensionMismatch,
  kNotSpanning,
  kIllConditioned,
  kShapeMismatch,
  kLengthMismatch,
  kNotHermitian,
  kNotDual,
  kInvalidProbability,
  kDegenerateWeight,
  kInvalidArgument,
  kEigenFailure,
  kSvdFailure,
  kCombinatorialLimit,
  kInsufficientSupport,
  kDegenerateDenominator,
  kNotInDelta1,
  kHypothesisFailed,
  kNotParseval,
  kParseError,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Input problems (exit code 2) as opposed to numeric failures (exit code 3).
  bool is_input_error() const noexcept;

 private:
  ErrorCode code_;
};

/// ⟨a, b⟩ with the convention linear in the first slot, conjugate-linear in the second.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& a,
                                const Eigen::MatrixBase<DerivedB>& b) {
  return b.dot(a);
}

}  // namespace frame_lab

#endif  // FRAME_LAB_COMMON_HPP_
