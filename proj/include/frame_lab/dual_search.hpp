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

// Search over the duals of a fixed frame for the smallest one-erasure measure.
//
// Every dual is S^{-1} F + sum_k c_k U_k. Splitting complex coefficients into real and
// imaginary parts gives a real parameter x, and both one-erasure objectives become
//
//   max_i || c_i + A_i x ||
//
// with affine maps into R^2 (spectral: q_i <g_i, f_i>) or R^{2n} (norm: q_i ||f_i|| g_i).
// That is a convex minimax problem; it is solved either on the log-barrier central path
// of the equivalent second-order cone program (default) or by subgradient descent.

#ifndef FRAME_LAB_DUAL_SEARCH_HPP_
#define FRAME_LAB_DUAL_SEARCH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "frame_lab/common.hpp"
#include "frame_lab/erasure.hpp"
#include "frame_lab/frame.hpp"
#include "frame_lab/parallel.hpp"
#include "frame_lab/random.hpp"
#include "frame_lab/weights.hpp"

namespace frame_lab {

enum class SearchMethod { kBarrier, kSubgradient };

const char* to_string(SearchMethod method);
SearchMethod search_method_from_string(const std::string& s);

struct SearchOptions {
  SearchMethod method = SearchMethod::kBarrier;
  int restarts = 20;
  /// Newton steps (barrier) or subgradient steps per start.
  int max_iterations = 5000;
  /// Largest allowed spread of the final values across starts.
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  /// Scale of the random starting coefficients.
  double start_radius = 1.0;
  /// Subgradient step c / sqrt(k).
  double step_scale = 0.1;
  int stall_window = 200;
  double stall_improvement = 1e-10;
  /// Barrier method stops once the duality-gap bound falls below this (relative).
  double barrier_gap = 1e-11;
};

/// The one-erasure objective of a fixed frame as a function of real coefficients.
template <typename Scalar>
class DualSearchProblem {
 public:
  using Matrix = MatrixX<Scalar>;

  DualSearchProblem(const Frame<Scalar>& f, const ProbabilityProfile& profile, MeasureKind kind)
      : basis_(f), canonical_(canonical_dual(f)), profile_(profile), kind_(kind) {
    detail::check_compatible(canonical_, profile);
    const Index n = f.dim();
    const Index count = f.count();
    const Index k_size = basis_.size();
    const Matrix& t = f.synthesis();
    const Matrix& g0 = canonical_.dual().synthesis();
    const Matrix& null = basis_.null_space();
    const Index block_dim = kind == MeasureKind::kSpectral ? 1 : n;
    offsets_.resize(static_cast<std::size_t>(count));
    jacobians_.resize(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) {
      const double qi = profile.weight(i);
      VectorX<Scalar> w0(block_dim);
      Matrix b = Matrix::Zero(block_dim, k_size);
      // coefficient k = l * n + r perturbs g_i by e_r conj(null(i, l))
      if (kind == MeasureKind::kSpectral) {
        w0(0) = Scalar(qi) * inner(g0.col(i), t.col(i));
        for (Index k = 0; k < k_size; ++k) {
          const Index r = k % n;
          const Index l = k / n;
          b(0, k) = Scalar(qi) * conj_(t(r, i)) * conj_(null(i, l));
        }
      } else {
        const Scalar scale(qi * double(t.col(i).norm()));
        w0 = scale * g0.col(i);
        for (Index k = 0; k < k_size; ++k) b(k % n, k) = scale * conj_(null(i, k / n));
      }
      realify(w0, b, offsets_[static_cast<std::size_t>(i)], jacobians_[static_cast<std::size_t>(i)]);
    }
  }

  /// Number of real parameters: the basis size, doubled for complex scalars.
  Index parameter_count() const { return is_complex_v<Scalar> ? 2 * basis_.size() : basis_.size(); }
  Index block_count() const { return static_cast<Index>(offsets_.size()); }
  MeasureKind kind() const { return kind_; }

  const DualPerturbationBasis<Scalar>& basis() const { return basis_; }
  const DualPair<Scalar>& canonical() const { return canonical_; }
  const ProbabilityProfile& profile() const { return profile_; }

  const Eigen::VectorXd& offset(Index i) const { return offsets_[static_cast<std::size_t>(i)]; }
  const Eigen::MatrixXd& jacobian(Index i) const { return jacobians_[static_cast<std::size_t>(i)]; }

  /// max_i q_i |<f_i, g_i>| or max_i q_i ||f_i|| ||g_i|| for the dual at x.
  double value(const Eigen::VectorXd& x) const {
    double v = 0;
    for (Index i = 0; i < block_count(); ++i) v = std::max(v, block_value(i, x));
    return v;
  }

  double block_value(Index i, const Eigen::VectorXd& x) const {
    if (x.size() == 0) return offset(i).norm();
    return (offset(i) + jacobian(i) * x).norm();
  }

  double canonical_value() const { return value(Eigen::VectorXd::Zero(parameter_count())); }

  VectorX<Scalar> coefficients(const Eigen::VectorXd& x) const {
    const Index k_size = basis_.size();
    VectorX<Scalar> c(k_size);
    for (Index k = 0; k < k_size; ++k) {
      if constexpr (is_complex_v<Scalar>)
        c(k) = Scalar(x(k), x(k_size + k));
      else
        c(k) = x(k);
    }
    return c;
  }

  DualPair<Scalar> dual(const Eigen::VectorXd& x) const {
    if (x.size() != parameter_count()) throw Error(ErrorCode::kLengthMismatch, "wrong parameter count");
    return DualPair<Scalar>(canonical_.frame(),
                            Frame<Scalar>(canonical_.dual().synthesis() + basis_.perturbation(coefficients(x))));
  }

 private:
  static Scalar conj_(const Scalar& s) {
    if constexpr (is_complex_v<Scalar>)
      return std::conj(s);
    else
      return s;
  }

  static void realify(const VectorX<Scalar>& w0, const Matrix& b, Eigen::VectorXd& c, Eigen::MatrixXd& a) {
    if constexpr (is_complex_v<Scalar>) {
      const Index d = w0.size();
      const Index k = b.cols();
      c.resize(2 * d);
      c << w0.real(), w0.imag();
      a.resize(2 * d, 2 * k);
      a << b.real(), -b.imag(), b.imag(), b.real();
    } else {
      c = w0;
      a = b;
    }
  }

  DualPerturbationBasis<Scalar> basis_;
  DualPair<Scalar> canonical_;
  ProbabilityProfile profile_;
  MeasureKind kind_;
  std::vector<Eigen::VectorXd> offsets_;
  std::vector<Eigen::MatrixXd> jacobians_;
};

template <typename Scalar>
struct SearchResult {
  MeasureKind kind;
  DualPair<Scalar> best_dual;
  VectorX<Scalar> best_coefficients;
  double best_value;
  double canonical_value;
  double gap;          // canonical_value - best_value
  int iterations;      // summed over all starts
  bool converged;
  double restart_spread;
  bool unique_dual;    // N == n: the search space is a single point
};

namespace detail {

struct RunOutcome {
  Eigen::VectorXd y;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Reduced problem max_i ||c_i + B_i y||, where y lives in the row space of the stacked
/// Jacobians so the barrier Hessian is nonsingular.
struct ReducedMinimax {
  std::vector<Eigen::VectorXd> c;
  std::vector<Eigen::MatrixXd> b;
  Eigen::MatrixXd basis;  // P x r, x = basis * y

  Index dim() const { return basis.cols(); }

  double value(const Eigen::VectorXd& y) const {
    double v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) v = std::max(v, (c[i] + b[i] * y).norm());
    return v;
  }
};

template <typename Scalar>
ReducedMinimax reduce(const DualSearchProblem<Scalar>& problem) {
  const Index p = problem.parameter_count();
  Index rows = 0;
  for (Index i = 0; i < problem.block_count(); ++i) rows += problem.jacobian(i).rows();
  Eigen::MatrixXd stacked(rows, p);
  Index at = 0;
  for (Index i = 0; i < problem.block_count(); ++i) {
    stacked.middleRows(at, problem.jacobian(i).rows()) = problem.jacobian(i);
    at += problem.jacobian(i).rows();
  }
  ReducedMinimax red;
  if (p == 0) {
    red.basis.resize(0, 0);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Index rank = 0;
    const double cut = sv.size() > 0 ? 1e-12 * std::max(1.0, sv(0)) : 0.0;
    for (Index k = 0; k < sv.size(); ++k)
      if (sv(k) > cut) ++rank;
    red.basis = svd.matrixV().leftCols(rank);
  }
  for (Index i = 0; i < problem.block_count(); ++i) {
    red.c.push_back(problem.offset(i));
    red.b.push_back(p == 0 ? Eigen::MatrixXd(problem.offset(i).size(), 0) : Eigen::MatrixXd(problem.jacobian(i) * red.basis));
  }
  return red;
}

RunOutcome barrier_minimize(const ReducedMinimax& problem, const Eigen::VectorXd& y0, const SearchOptions& options);
RunOutcome subgradient_minimize(const ReducedMinimax& problem, const Eigen::VectorXd& y0,
                                const SearchOptions& options);

}  // namespace detail

/// Minimizes the one-erasure measure of `kind` over all duals of `f`, starting from the
/// canonical dual and `options.restarts` random coefficient vectors.
template <typename Scalar>
SearchResult<Scalar> minimize_one_erasure(const Frame<Scalar>& f, const ProbabilityProfile& profile,
                                          MeasureKind kind, const SearchOptions& options = {}) {
  const DualSearchProblem<Scalar> problem(f, profile, kind);
  const double canonical_value = problem.canonical_value();
  const Index p = problem.parameter_count();
  if (p == 0) {
    return SearchResult<Scalar>{kind, problem.canonical(), VectorX<Scalar>(0), canonical_value, canonical_value, 0.0,
                                0, true, 0.0, true};
  }
  const auto reduced = detail::reduce(problem);
  const int starts = std::max(0, options.restarts) + 1;
  std::vector<detail::RunOutcome> runs(static_cast<std::size_t>(starts));
  parallel_for(starts, [&](Index r) {
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(reduced.dim());
    if (r > 0) {
      Rng rng(options.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r));
      const Eigen::VectorXd x0 = rng.normal_vector<double>(p) * (options.start_radius / std::sqrt(double(p)));
      y0 = reduced.basis.transpose() * x0;
    }
    runs[static_cast<std::size_t>(r)] = options.method == SearchMethod::kBarrier
                                            ? detail::barrier_minimize(reduced, y0, options)
                                            : detail::subgradient_minimize(reduced, y0, options);
  });
  std::size_t best = 0;
  double lo = runs[0].value;
  double hi = runs[0].value;
  int iterations = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    iterations += runs[r].iterations;
    lo = std::min(lo, runs[r].value);
    hi = std::max(hi, runs[r].value);
    if (runs[r].value < runs[best].value) best = r;
  }
  Eigen::VectorXd x = reduced.basis * runs[best].y;
  double best_value = problem.value(x);
  if (!(best_value <= canonical_value)) {
    x.setZero();
    best_value = canonical_value;
  }
  const double spread = hi - lo;
  return SearchResult<Scalar>{kind,
                              problem.dual(x),
                              problem.coefficients(x),
                              best_value,
                              canonical_value,
                              canonical_value - best_value,
                              iterations,
                              spread <= options.tolerance,
                              spread,
                              false};
}

template <typename Scalar>
SearchResult<Scalar> minimize_spectral_one(const Frame<Scalar>& f, const ProbabilityProfile& profile,
                                           const SearchOptions& options = {}) {
  return minimize_one_erasure(f, profile, MeasureKind::kSpectral, options);
}

template <typename Scalar>
SearchResult<Scalar> minimize_norm_one(const Frame<Scalar>& f, const ProbabilityProfile& profile,
                                       const SearchOptions& options = {}) {
  return minimize_one_erasure(f, profile, MeasureKind::kNorm, options);
}

template <typename Scalar>
struct DualSample {
  DualPair<Scalar> pair;
  double value;
  double radius;
};

/// Random duals S^{-1} F + U with U drawn uniformly from spheres of the given radii
/// (cycled) in the real coefficient space; value is the one-erasure measure.
template <typename Scalar>
std::vector<DualSample<Scalar>> random_dual_sampler(const Frame<Scalar>& f, const ProbabilityProfile& profile,
                                                    std::size_t count, std::uint64_t seed, MeasureKind kind,
                                                    std::vector<double> radii = {0.05, 0.2, 1.0, 3.0}) {
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  if (radii.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one radius");
  const DualSearchProblem<Scalar> problem(f, profile, kind);
  const Index p = problem.parameter_count();
  Rng rng(seed);
  std::vector<DualSample<Scalar>> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double radius = radii[s % radii.size()];
    Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
    if (p > 0) x = rng.unit_vector<double>(p) * radius;
    out.push_back(DualSample<Scalar>{problem.dual(x), problem.value(x), radius});
  }
  return out;
}

enum class Verdict { kOptimal, kNotOptimal, kInconclusive };

const char* to_string(Verdict verdict);

struct CanonicalVerdict {
  Verdict verdict;
  double gap;
  bool converged;
};

/// Numerical check that the canonical dual minimizes the one-erasure measure. A dual
/// found with a value more than `tol` below the canonical one settles the question
/// negatively; a non-converged search otherwise is inconclusive.
template <typename Scalar>
CanonicalVerdict certify_canonical_optimal(const Frame<Scalar>& f, const ProbabilityProfile& profile,
                                           MeasureKind kind, double tol, const SearchOptions& options = {}) {
  const auto result = minimize_one_erasure(f, profile, kind, options);
  Verdict v;
  if (result.gap > tol)
    v = Verdict::kNotOptimal;
  else
    v = result.converged ? Verdict::kOptimal : Verdict::kInconclusive;
  return {v, result.gap, result.converged};
}

}  // namespace frame_lab

#endif  // FRAME_LAB_DUAL_SEARCH_HPP_
