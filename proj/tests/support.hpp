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

// Random fixtures and brute-force oracles shared by the test suites. The oracles work
// on raw matrices, independently of the library code paths they check.

#ifndef FRAME_LAB_TESTS_SUPPORT_HPP_
#define FRAME_LAB_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "frame_lab/frame.hpp"
#include "frame_lab/weights.hpp"

namespace frame_lab::testing {

class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0, double hi = 1) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }

  template <typename Scalar>
  Scalar scalar() {
    if constexpr (is_complex_v<Scalar>) {
      const double re = normal();
      return Scalar(re, normal());
    } else {
      return Scalar(normal());
    }
  }

  template <typename Scalar>
  MatrixX<Scalar> matrix(Index rows, Index cols) {
    MatrixX<Scalar> m(rows, cols);
    for (Index c = 0; c < cols; ++c)
      for (Index r = 0; r < rows; ++r) m(r, c) = scalar<Scalar>();
    return m;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Gaussian synthesis matrix, redrawn until the frame operator is well conditioned.
template <typename Scalar>
MatrixX<Scalar> random_synthesis(Index n, Index count, TestRng& rng, double max_condition = 1e4) {
  while (true) {
    MatrixX<Scalar> t = rng.matrix<Scalar>(n, count);
    Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(t * t.adjoint());
    const auto& ev = es.eigenvalues();
    if (ev(0) > 0 && ev(n - 1) / ev(0) < max_condition) return t;
  }
}

/// Parseval synthesis matrix: S^{-1/2} T for a random T.
template <typename Scalar>
MatrixX<Scalar> random_parseval_synthesis(Index n, Index count, TestRng& rng) {
  const MatrixX<Scalar> t = random_synthesis<Scalar>(n, count, rng);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(t * t.adjoint());
  return es.operatorInverseSqrt() * t;
}

/// Dirichlet(1) probabilities; with zero_fraction > 0 some entries are forced to zero.
inline std::vector<double> random_probabilities(Index count, TestRng& rng, double zero_fraction = 0) {
  while (true) {
    std::vector<double> p(static_cast<std::size_t>(count));
    double sum = 0;
    for (auto& x : p) {
      x = rng.uniform() < zero_fraction ? 0.0 : -std::log(1 - rng.uniform());
      sum += x;
    }
    if (!(sum > 0)) continue;
    for (auto& x : p) x /= sum;
    // make the sum exactly representable as 1 within the profile's check
    const bool degenerate = std::any_of(p.begin(), p.end(), [](double x) { return x > 1 - 1e-6; });
    if (!degenerate || count == 1) return p;
  }
}

/// Weight numbers straight from their definition.
inline std::vector<double> oracle_weights(const std::vector<double>& p, Index n) {
  double sum = 0;
  for (double x : p) sum += x;
  const double count = double(p.size());
  std::vector<double> q;
  for (double x : p) q.push_back(sum / (sum - x) * (count - 1) / double(n));
  return q;
}

/// S^{-1} T by an LU solve.
template <typename Scalar>
MatrixX<Scalar> oracle_canonical_dual(const MatrixX<Scalar>& t) {
  const MatrixX<Scalar> s = t * t.adjoint();
  return s.fullPivLu().solve(t);
}

/// Canonical dual plus C (I - T^H S^{-1} T): every such G satisfies G T^H = I.
template <typename Scalar>
MatrixX<Scalar> oracle_random_dual(const MatrixX<Scalar>& t, double radius, TestRng& rng) {
  const Index count = t.cols();
  const MatrixX<Scalar> g0 = oracle_canonical_dual(t);
  const MatrixX<Scalar> proj = MatrixX<Scalar>::Identity(count, count) - t.adjoint() * g0;
  const MatrixX<Scalar> c = rng.matrix<Scalar>(t.rows(), count) * radius;
  return g0 + c * proj;
}

/// A dual of t with <f_i, g_i> = 1/q_i for every i, solved directly from the linear
/// constraints on conj(G); a random null-space step of the given size is added.
/// Empty when the constraints are inconsistent.
template <typename Scalar>
std::optional<MatrixX<Scalar>> oracle_one_uniform_dual(const MatrixX<Scalar>& t, const std::vector<double>& q,
                                                       double radius, TestRng& rng) {
  const Index n = t.rows();
  const Index count = t.cols();
  // unknown h = vec(conj(G)), column-major
  MatrixX<Scalar> a = MatrixX<Scalar>::Zero(n * n + count, n * count);
  VectorX<Scalar> rhs = VectorX<Scalar>::Zero(n * n + count);
  for (Index r = 0; r < n; ++r)
    for (Index b = 0; b < n; ++b) {
      for (Index k = 0; k < count; ++k) a(r * n + b, k * n + r) = t(b, k);
      rhs(r * n + b) = Scalar(r == b ? 1.0 : 0.0);
    }
  for (Index i = 0; i < count; ++i) {
    for (Index r = 0; r < n; ++r) a(n * n + i, i * n + r) = t(r, i);
    rhs(n * n + i) = Scalar(1.0 / q[static_cast<std::size_t>(i)]);
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  svd.setThreshold(1e-12);
  VectorX<Scalar> h = svd.solve(rhs);
  if ((a * h - rhs).norm() > 1e-10) return std::nullopt;
  const Index rank = svd.rank();
  if (rank < a.cols()) {
    const MatrixX<Scalar> null = svd.matrixV().rightCols(a.cols() - rank);
    VectorX<Scalar> z = rng.matrix<Scalar>(null.cols(), 1);
    h += radius * null * z / z.norm();
  }
  MatrixX<Scalar> g(n, count);
  for (Index i = 0; i < count; ++i) g.col(i) = h.segment(i * n, n).conjugate();
  return g;
}

struct NormOptimalCase {
  MatrixX<cplx> phi;
  MatrixX<cplx> t;
  MatrixX<cplx> g;
  std::vector<double> p;
};

/// A pair reaching the norm lower bound. A harmonic frame is perturbed and made Parseval
/// again (phi), p_i = 1 - (N - 1) ||phi_i||^2 / n makes ||phi_i||^2 = 1/q_i, and
/// f_i = c_i phi_i, g_i = phi_i / conj(c_i) for random nonzero c_i.
inline NormOptimalCase oracle_norm_optimal_case(Index n, Index count, TestRng& rng) {
  const double pi = std::acos(-1.0);
  while (true) {
    MatrixX<cplx> phi(n, count);
    for (Index r = 0; r < n; ++r)
      for (Index j = 0; j < count; ++j)
        phi(r, j) = std::polar(1.0 / std::sqrt(double(count)), 2 * pi * double(r * j) / double(count));
    phi += (0.05 / std::sqrt(double(count))) * rng.matrix<cplx>(n, count);
    Eigen::SelfAdjointEigenSolver<MatrixX<cplx>> es(phi * phi.adjoint());
    phi = es.operatorInverseSqrt() * phi;
    NormOptimalCase out;
    bool ok = true;
    for (Index j = 0; j < count; ++j) {
      const double x = 1 - double(count - 1) * phi.col(j).squaredNorm() / double(n);
      ok = ok && x >= 0;
      out.p.push_back(std::max(0.0, x));
    }
    if (!ok) continue;
    out.phi = phi;
    out.t = phi;
    out.g = phi;
    for (Index j = 0; j < count; ++j) {
      const cplx c = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * pi));
      out.t.col(j) *= c;
      out.g.col(j) /= std::conj(c);
    }
    return out;
  }
}

/// Indices of the set bits of mask.
inline std::vector<Index> bits_of(std::uint32_t mask) {
  std::vector<Index> out;
  for (Index i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

inline std::vector<std::vector<Index>> all_subsets(Index count, Index m) {
  std::vector<std::vector<Index>> out;
  for (std::uint32_t mask = 0; mask < (1u << count); ++mask)
    if (std::popcount(mask) == m) out.push_back(bits_of(mask));
  return out;
}

template <typename Scalar>
MatrixX<cplx> oracle_error_operator(const MatrixX<Scalar>& t, const MatrixX<Scalar>& g, const std::vector<double>& q,
                                    const std::vector<Index>& set) {
  const Index n = t.rows();
  MatrixX<cplx> e = MatrixX<cplx>::Zero(n, n);
  for (Index i : set)
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) e(r, c) += q[static_cast<std::size_t>(i)] * cplx(g(r, i)) * std::conj(cplx(t(c, i)));
  return e;
}

inline double oracle_spectral_radius(const MatrixX<cplx>& e) {
  Eigen::ComplexEigenSolver<MatrixX<cplx>> es(e);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline double oracle_operator_norm(const MatrixX<cplx>& e) {
  Eigen::SelfAdjointEigenSolver<MatrixX<cplx>> es(e.adjoint() * e);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Worst case over all size-m sets of the full n x n error operator.
template <typename Scalar>
double oracle_measure(const MatrixX<Scalar>& t, const MatrixX<Scalar>& g, const std::vector<double>& q, Index m,
                      bool spectral) {
  double best = 0;
  for (const auto& set : all_subsets(t.cols(), m)) {
    const auto e = oracle_error_operator(t, g, q, set);
    best = std::max(best, spectral ? oracle_spectral_radius(e) : oracle_operator_norm(e));
  }
  return best;
}

}  // namespace frame_lab::testing

#endif  // FRAME_LAB_TESTS_SUPPORT_HPP_
