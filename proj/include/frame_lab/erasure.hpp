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

// Probability-weighted erasure error operators
//
//   E_L f = sum_{i in L} q_i <f, f_i> g_i
//
// and the worst case over all erasure sets of a fixed size m, measured either by the
// spectral radius or by the operator norm of E_L.

#ifndef FRAME_LAB_ERASURE_HPP_
#define FRAME_LAB_ERASURE_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "frame_lab/common.hpp"
#include "frame_lab/frame.hpp"
#include "frame_lab/parallel.hpp"
#include "frame_lab/random.hpp"
#include "frame_lab/weights.hpp"

namespace frame_lab {

/// Sorted, duplicate-free zero-based indices of erased coefficients.
struct ErasureSet {
  std::vector<Index> indices;

  Index size() const { return static_cast<Index>(indices.size()); }
  auto operator<=>(const ErasureSet&) const = default;
};

/// Sorts and validates; throws kInvalidArgument on duplicates or out-of-range indices.
ErasureSet make_erasure_set(std::vector<Index> indices, Index count);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(Index n, Index k);

/// All size-m subsets of {0, ..., count-1} in lexicographic order.
std::vector<ErasureSet> enumerate_erasure_sets(Index count, Index m);

enum class MeasureKind { kSpectral, kNorm };

const char* to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(const std::string& s);

struct ErasureMeasureReport {
  MeasureKind kind = MeasureKind::kSpectral;
  Index m = 0;
  double value = 0;
  std::vector<ErasureSet> argmax_sets;
  std::vector<std::pair<ErasureSet, double>> per_set_values;
  /// m = 1 norm reports only: |closed form - SVD| at one sampled index.
  std::optional<double> cross_check_residual;

  bool operator==(const ErasureMeasureReport&) const = default;
};

struct MeasureOptions {
  std::uint64_t combination_cap = 1'000'000;
  double tie_tolerance = tolerance::kTie;
};

namespace detail {

template <typename Scalar>
void check_compatible(const DualPair<Scalar>& pair, const ProbabilityProfile& profile) {
  if (profile.count() != pair.count() || profile.dim() != pair.dim())
    throw Error(ErrorCode::kShapeMismatch, "probability profile does not match the dual pair");
}

inline void check_set(const ErasureSet& set, Index count) {
  for (std::size_t k = 0; k < set.indices.size(); ++k) {
    const Index i = set.indices[k];
    if (i < 0 || i >= count || (k > 0 && set.indices[k - 1] >= i))
      throw Error(ErrorCode::kInvalidArgument, "malformed erasure set");
  }
}

inline ErasureMeasureReport finalize(MeasureKind kind, Index m, std::vector<ErasureSet> sets,
                                     const std::vector<double>& values, double tie_tol) {
  ErasureMeasureReport r;
  r.kind = kind;
  r.m = m;
  r.value = *std::max_element(values.begin(), values.end());
  const double cut = r.value - tie_tol * std::max(1.0, r.value);
  r.per_set_values.reserve(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (values[k] >= cut) r.argmax_sets.push_back(sets[k]);
    r.per_set_values.emplace_back(std::move(sets[k]), values[k]);
  }
  return r;
}

inline std::vector<ErasureSet> checked_sets(Index count, Index m, const MeasureOptions& options) {
  if (m < 1 || m > count)
    throw Error(ErrorCode::kInvalidArgument,
                "erasure count m=" + std::to_string(m) + " outside [1, " + std::to_string(count) + "]");
  const auto total = binomial(count, m);
  if (total > options.combination_cap)
    throw Error(ErrorCode::kCombinatorialLimit,
                std::to_string(total) + " erasure sets exceed the cap " + std::to_string(options.combination_cap));
  return enumerate_erasure_sets(count, m);
}

}  // namespace detail

/// Largest eigenvalue modulus.
template <typename Derived>
double spectral_radius(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kShapeMismatch, "spectral radius needs a square matrix");
  if (m.rows() == 0) return 0;
  if (m.rows() == 1) return std::abs(m(0, 0));
  const MatrixX<cplx> mc = m.template cast<cplx>();
  Eigen::ComplexEigenSolver<MatrixX<cplx>> es(mc, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::kEigenFailure, "eigenvalue iteration did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Largest singular value.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  const auto& sv = svd.singularValues();
  if (!sv.allFinite()) throw Error(ErrorCode::kSvdFailure, "non-finite singular values");
  return double(sv(0));
}

/// n x n matrix of f -> sum_{i in L} q_i <f, f_i> g_i.
template <typename Scalar>
MatrixX<Scalar> error_operator(const DualPair<Scalar>& pair, const ProbabilityProfile& profile,
                               const ErasureSet& lambda) {
  detail::check_compatible(pair, profile);
  detail::check_set(lambda, pair.count());
  const auto& t = pair.frame().synthesis();
  const auto& g = pair.dual().synthesis();
  MatrixX<Scalar> e = MatrixX<Scalar>::Zero(pair.dim(), pair.dim());
  for (Index i : lambda.indices) e.noalias() += Scalar(profile.weight(i)) * g.col(i) * t.col(i).adjoint();
  return e;
}

/// m x m matrix [q_i <g_j, f_i>]_{i, j in L}; its nonzero spectrum is that of E_L.
template <typename Scalar>
MatrixX<Scalar> erasure_block(const DualPair<Scalar>& pair, const ProbabilityProfile& profile,
                              const ErasureSet& lambda) {
  detail::check_compatible(pair, profile);
  detail::check_set(lambda, pair.count());
  const auto& alpha = pair.cross_gram();
  const Index m = lambda.size();
  MatrixX<Scalar> b(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index c = 0; c < m; ++c) {
      const Index i = lambda.indices[static_cast<std::size_t>(a)];
      const Index j = lambda.indices[static_cast<std::size_t>(c)];
      b(a, c) = Scalar(profile.weight(i)) * alpha(j, i);
    }
  return b;
}

/// Both eigenvalues of the weighted 2 x 2 block for erasures {i, j}:
///   (q_i a_ii + q_j a_jj +- sqrt((q_i a_ii - q_j a_jj)^2 + 4 q_i q_j a_ij a_ji)) / 2.
template <typename Scalar>
std::pair<cplx, cplx> two_erasure_eigenvalues(const DualPair<Scalar>& pair, const ProbabilityProfile& profile,
                                              Index i, Index j) {
  detail::check_compatible(pair, profile);
  if (i == j || i < 0 || j < 0 || i >= pair.count() || j >= pair.count())
    throw Error(ErrorCode::kInvalidArgument, "two-erasure roots need distinct in-range indices");
  const auto& alpha = pair.cross_gram();
  const double qi = profile.weight(i);
  const double qj = profile.weight(j);
  const cplx a = qi * cplx(alpha(i, i));
  const cplx b = qj * cplx(alpha(j, j));
  const cplx root = std::sqrt((a - b) * (a - b) + 4.0 * qi * qj * cplx(alpha(i, j)) * cplx(alpha(j, i)));
  return {(a + b + root) / 2.0, (a + b - root) / 2.0};
}

/// Worst-case spectral radius of E_L over all erasure sets of size m.
template <typename Scalar>
ErasureMeasureReport spectral_measure(const DualPair<Scalar>& pair, const ProbabilityProfile& profile, Index m,
                                      const MeasureOptions& options = {}) {
  detail::check_compatible(pair, profile);
  auto sets = detail::checked_sets(pair.count(), m, options);
  std::vector<double> values(sets.size());
  const auto& alpha = pair.cross_gram();
  parallel_for(static_cast<Index>(sets.size()), [&](Index k) {
    const auto& s = sets[static_cast<std::size_t>(k)];
    double v;
    if (m == 1) {
      const Index i = s.indices[0];
      v = profile.weight(i) * std::abs(alpha(i, i));
    } else if (m == 2) {
      const auto [r1, r2] = two_erasure_eigenvalues(pair, profile, s.indices[0], s.indices[1]);
      v = std::max(std::abs(r1), std::abs(r2));
    } else if (m < pair.dim()) {
      v = spectral_radius(erasure_block(pair, profile, s));
    } else {
      v = spectral_radius(error_operator(pair, profile, s));
    }
    values[static_cast<std::size_t>(k)] = v;
  });
  return detail::finalize(MeasureKind::kSpectral, m, std::move(sets), values, options.tie_tolerance);
}

/// Worst-case operator norm of E_L over all erasure sets of size m.
template <typename Scalar>
ErasureMeasureReport norm_measure(const DualPair<Scalar>& pair, const ProbabilityProfile& profile, Index m,
                                  const MeasureOptions& options = {}) {
  detail::check_compatible(pair, profile);
  auto sets = detail::checked_sets(pair.count(), m, options);
  std::vector<double> values(sets.size());
  const auto& t = pair.frame().synthesis();
  const auto& g = pair.dual().synthesis();
  parallel_for(static_cast<Index>(sets.size()), [&](Index k) {
    const auto& s = sets[static_cast<std::size_t>(k)];
    double v;
    if (m == 1) {
      const Index i = s.indices[0];
      v = profile.weight(i) * double(t.col(i).norm()) * double(g.col(i).norm());
    } else {
      v = operator_norm(error_operator(pair, profile, s));
    }
    values[static_cast<std::size_t>(k)] = v;
  });
  std::optional<double> residual;
  if (m == 1) {
    Rng rng(0x5eedULL + static_cast<std::uint64_t>(pair.count()));
    const auto i = static_cast<Index>(rng.below(static_cast<std::uint64_t>(pair.count())));
    const double svd_value = operator_norm(error_operator(pair, profile, ErasureSet{{i}}));
    residual = std::abs(svd_value - values[static_cast<std::size_t>(i)]);
  }
  auto report = detail::finalize(MeasureKind::kNorm, m, std::move(sets), values, options.tie_tolerance);
  report.cross_check_residual = residual;
  return report;
}

template <typename Scalar>
ErasureMeasureReport erasure_measure(const DualPair<Scalar>& pair, const ProbabilityProfile& profile, Index m,
                                     MeasureKind kind, const MeasureOptions& options = {}) {
  return kind == MeasureKind::kSpectral ? spectral_measure(pair, profile, m, options)
                                        : norm_measure(pair, profile, m, options);
}

/// Draws m indices without replacement, each draw proportional to the remaining
/// probability mass; once the remaining mass is zero, uniformly over what is left.
ErasureSet sample_erasure_set(const ProbabilityProfile& profile, Index m, Rng& rng);

struct SimulationStats {
  Index m = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string algorithm = Rng::kAlgorithm;
  double max_error = 0;
  double mean_error = 0;
  /// Theoretical worst case d_m^p (0 for m = 0).
  double bound = 0;
  /// Number of trials whose error exceeded bound + 1e-9.
  std::uint64_t exceed_count = 0;
  /// Equal-width bins over [0, bound]; values beyond the bound land in the last bin.
  std::vector<std::uint64_t> histogram;

  bool operator==(const SimulationStats&) const = default;
};

/// Monte Carlo erasure channel: unit-norm random signals, erasure sets sampled from the
/// profile, error magnitude ||E_L f||.
template <typename Scalar>
SimulationStats simulate_erasure_channel(const DualPair<Scalar>& pair, const ProbabilityProfile& profile, Index m,
                                         std::uint64_t trials, std::uint64_t seed, int bins = 20) {
  detail::check_compatible(pair, profile);
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one trial");
  if (m < 0 || m > pair.count())
    throw Error(ErrorCode::kInsufficientSupport, "cannot erase " + std::to_string(m) + " of " +
                                                     std::to_string(pair.count()) + " coefficients");
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one histogram bin");
  SimulationStats stats;
  stats.m = m;
  stats.trials = trials;
  stats.seed = seed;
  stats.bound = m == 0 ? 0.0 : norm_measure(pair, profile, m).value;
  stats.histogram.assign(static_cast<std::size_t>(bins), 0);
  Rng rng(seed);
  double sum = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const VectorX<Scalar> f = rng.unit_vector<Scalar>(pair.dim());
    const ErasureSet lambda = sample_erasure_set(profile, m, rng);
    const double err = m == 0 ? 0.0 : double((error_operator(pair, profile, lambda) * f).norm());
    sum += err;
    stats.max_error = std::max(stats.max_error, err);
    if (err > stats.bound + 1e-9) ++stats.exceed_count;
    std::size_t bin = 0;
    if (stats.bound > 0) bin = static_cast<std::size_t>(std::max(0.0, err / stats.bound * bins));
    stats.histogram[std::min<std::size_t>(bin, stats.histogram.size() - 1)]++;
  }
  stats.mean_error = sum / double(trials);
  return stats;
}

}  // namespace frame_lab

#endif  // FRAME_LAB_ERASURE_HPP_
