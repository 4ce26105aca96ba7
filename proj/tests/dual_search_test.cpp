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

#include <gtest/gtest.h>

#include "frame_lab/dual_search.hpp"
#include "reference_frames.hpp"
#include "support.hpp"

namespace frame_lab {
namespace {

using testing::TestRng;

// Direct one-erasure objective, independent of the search parameterization.
double one_erasure(const MatrixX<double>& t, const MatrixX<double>& g, const std::vector<double>& q, bool spectral) {
  double v = 0;
  for (Index i = 0; i < t.cols(); ++i) {
    const double qi = q[static_cast<std::size_t>(i)];
    v = std::max(v, spectral ? qi * std::abs(t.col(i).dot(g.col(i))) : qi * t.col(i).norm() * g.col(i).norm());
  }
  return v;
}

// Duals of the oblique frame are G0 + w k^T with k spanning the kernel of T; minimize over w
// by a coarse grid followed by shrinking pattern search.
double oblique_grid_minimum(bool spectral) {
  const auto f = reference::oblique_frame();
  const MatrixX<double> g0 = canonical_dual(f).dual().synthesis();
  const Eigen::RowVector3d k(1, 1, -1);
  const auto q = reference::oblique_profile().weights();
  auto value = [&](double a, double b) {
    const MatrixX<double> g = g0 + Eigen::Vector2d(a, b) * k;
    return one_erasure(f.synthesis(), g, q, spectral);
  };
  double best = value(0, 0), ba = 0, bb = 0;
  for (double a = -1; a <= 1; a += 0.01)
    for (double b = -1; b <= 1; b += 0.01)
      if (const double v = value(a, b); v < best) best = v, ba = a, bb = b;
  for (double h = 0.01; h > 1e-12; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (auto [da, db] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}, {h, h}, {-h, -h}, {h, -h}, {-h, h}})
        if (const double v = value(ba + da, bb + db); v < best) best = v, ba += da, bb += db, moved = true;
    }
  }
  return best;
}

TEST(DualSearch, ObliqueSpectralBeatsCanonical) {
  const auto r = minimize_spectral_one(reference::oblique_frame(), reference::oblique_profile());
  EXPECT_NEAR(r.canonical_value, 4.0 / 3, 1e-12);
  EXPECT_LE(r.best_value, 10.0 / 9 + 1e-12);
  EXPECT_GT(r.gap, 0.2);
  EXPECT_TRUE(r.converged);
  EXPECT_FALSE(r.unique_dual);
  // the one-erasure spectral value never drops below one
  EXPECT_NEAR(r.best_value, 1.0, 1e-7);
  EXPECT_NEAR(r.best_value, oblique_grid_minimum(true), 1e-7);
  EXPECT_TRUE(verify_dual(r.best_dual.frame(), r.best_dual.dual(), 1e-9));
  const auto q = reference::oblique_profile().weights();
  EXPECT_NEAR(one_erasure(r.best_dual.frame().synthesis(), r.best_dual.dual().synthesis(), q, true), r.best_value,
              1e-12);
}

TEST(DualSearch, ObliqueNormMatchesGridSearch) {
  const auto r = minimize_norm_one(reference::oblique_frame(), reference::oblique_profile());
  EXPECT_NEAR(r.canonical_value, 4.0 / 3, 1e-12);
  EXPECT_LE(r.best_value, 2 * std::sqrt(26.0) / 9 + 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.best_value, oblique_grid_minimum(false), 1e-7);
}

TEST(DualSearch, TightFrameCanonicalIsOptimal) {
  const auto f = reference::tight_frame();
  const auto profile = reference::tight_profile();
  for (auto kind : {MeasureKind::kSpectral, MeasureKind::kNorm}) {
    const auto r = minimize_one_erasure(f, profile, kind);
    EXPECT_NEAR(r.canonical_value, 1.0, 1e-12);
    EXPECT_LE(r.gap, 1e-6);
    EXPECT_GE(r.gap, 0);
    EXPECT_EQ(certify_canonical_optimal(f, profile, kind, 1e-6).verdict, Verdict::kOptimal);
  }
}

TEST(DualSearch, ObliqueCanonicalIsNotOptimal) {
  const auto f = reference::oblique_frame();
  const auto verdict = certify_canonical_optimal(f, reference::oblique_profile(), MeasureKind::kSpectral, 1e-6);
  EXPECT_EQ(verdict.verdict, Verdict::kNotOptimal);
  EXPECT_NEAR(verdict.gap, 1.0 / 3, 1e-7);
}

TEST(DualSearch, BasisHasUniqueDual) {
  const auto f = build_frame<double>(2, std::vector<std::vector<double>>{{1, 1}, {0, 2}});
  const ProbabilityProfile profile({0.3, 0.7}, 2);
  const auto r = minimize_norm_one(f, profile);
  EXPECT_TRUE(r.unique_dual);
  EXPECT_EQ(r.gap, 0);
  EXPECT_EQ(r.best_coefficients.size(), 0);
  EXPECT_LE((r.best_dual.dual().synthesis() - canonical_dual(f).dual().synthesis()).norm(), 1e-14);
}

TEST(DualSearch, RandomFramesRespectBoundsAndConstraints) {
  TestRng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.integer(1, 4);
    const Index count = rng.integer(n + 1, 2 * n + 2);
    const ProbabilityProfile profile(testing::random_probabilities(count, rng, 0.2), n);
    SearchOptions options;
    options.restarts = 4;
    if (trial % 2 == 0) {
      const FrameXd f(testing::random_synthesis<double>(n, count, rng));
      for (auto kind : {MeasureKind::kSpectral, MeasureKind::kNorm}) {
        const auto r = minimize_one_erasure(f, profile, kind, options);
        EXPECT_GE(r.best_value, 1 - 1e-6);
        EXPECT_LE(r.best_value, r.canonical_value);
        EXPECT_TRUE(verify_dual(f, r.best_dual.dual(), 1e-9));
        EXPECT_NEAR(one_erasure(f.synthesis(), r.best_dual.dual().synthesis(), profile.weights(),
                                kind == MeasureKind::kSpectral),
                    r.best_value, 1e-9);
      }
    } else {
      const FrameXcd f(testing::random_synthesis<cplx>(n, count, rng));
      const auto r = minimize_norm_one(f, profile, options);
      EXPECT_GE(r.best_value, 1 - 1e-6);
      EXPECT_LE(r.best_value, r.canonical_value);
      EXPECT_TRUE(verify_dual(f, r.best_dual.dual(), 1e-9));
      const double direct = testing::oracle_measure(f.synthesis(), r.best_dual.dual().synthesis(), profile.weights(),
                                                    1, false);
      EXPECT_NEAR(direct, r.best_value, 1e-9);
    }
  }
}

TEST(DualSearch, SearchBeatsRandomDuals) {
  TestRng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.integer(2, 3);
    const Index count = rng.integer(n + 1, n + 4);
    const auto t = testing::random_synthesis<double>(n, count, rng);
    const ProbabilityProfile profile(testing::random_probabilities(count, rng), n);
    const auto r = minimize_norm_one(FrameXd(t), profile);
    for (int k = 0; k < 50; ++k) {
      const auto g = testing::oracle_random_dual(t, rng.uniform(0, 1), rng);
      EXPECT_GE(one_erasure(t, g, profile.weights(), false), r.best_value - 1e-7);
    }
  }
}

TEST(DualSearch, ObjectiveIsConvexAlongDualSegments) {
  TestRng rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = rng.integer(1, 4);
    const Index count = rng.integer(n + 1, 2 * n + 2);
    const auto t = testing::random_synthesis<cplx>(n, count, rng);
    const auto q = testing::oracle_weights(testing::random_probabilities(count, rng), n);
    const auto g1 = testing::oracle_random_dual(t, 1.0, rng);
    const auto g2 = testing::oracle_random_dual(t, 1.0, rng);
    const double lambda = rng.uniform(0, 1);
    const MatrixX<cplx> mid = lambda * g1 + (1 - lambda) * g2;
    for (bool spectral : {true, false}) {
      const double a = testing::oracle_measure(t, g1, q, 1, spectral);
      const double b = testing::oracle_measure(t, g2, q, 1, spectral);
      EXPECT_LE(testing::oracle_measure(t, mid, q, 1, spectral), lambda * a + (1 - lambda) * b + 1e-10);
    }
  }
}

TEST(DualSearch, SubgradientApproachesBarrier) {
  SearchOptions options;
  options.method = SearchMethod::kSubgradient;
  options.max_iterations = 20000;
  const auto f = reference::oblique_frame();
  const auto profile = reference::oblique_profile();
  const auto sub = minimize_norm_one(f, profile, options);
  const auto bar = minimize_norm_one(f, profile);
  EXPECT_LE(sub.best_value, sub.canonical_value);
  EXPECT_NEAR(sub.best_value, bar.best_value, 1e-3);
  EXPECT_TRUE(verify_dual(f, sub.best_dual.dual(), 1e-9));
}

TEST(DualSearch, DeterministicForFixedSeed) {
  const auto f = reference::oblique_frame();
  const auto profile = reference::oblique_profile();
  SearchOptions options;
  options.seed = 5;
  const auto a = minimize_norm_one(f, profile, options);
  const auto b = minimize_norm_one(f, profile, options);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_dual.dual().synthesis(), b.best_dual.dual().synthesis());
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(DualSearch, OptionErrors) {
  EXPECT_EQ(search_method_from_string("barrier"), SearchMethod::kBarrier);
  EXPECT_THROW(search_method_from_string("newton"), Error);
  const auto f = reference::oblique_frame();
  EXPECT_THROW(minimize_norm_one(f, reference::tight_profile()), Error);
}

TEST(DualSampler, TightFrameSamplesStayAboveOne) {
  const auto f = reference::tight_frame();
  const auto samples = random_dual_sampler(f, reference::tight_profile(), 10000, 17, MeasureKind::kSpectral);
  ASSERT_EQ(samples.size(), 10000u);
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    lo = std::min(lo, s.value);
    ASSERT_LE(dual_residual(f, s.pair.dual()), 1e-10);
  }
  EXPECT_GE(lo, 1 - 1e-9);
}

TEST(DualSampler, ObliqueSamplesImproveOnCanonical) {
  const auto f = reference::oblique_frame();
  const auto profile = reference::oblique_profile();
  const auto samples = random_dual_sampler(f, profile, 2000, 23, MeasureKind::kNorm, {0.1});
  bool below = false;
  for (const auto& s : samples) {
    below = below || s.value < 4.0 / 3;
    EXPECT_NEAR(s.value,
                one_erasure(f.synthesis(), s.pair.dual().synthesis(), profile.weights(), false), 1e-12);
    EXPECT_NEAR((s.pair.dual().synthesis() - canonical_dual(f).dual().synthesis()).norm(), 0.1, 1e-12);
  }
  EXPECT_TRUE(below);
  const auto again = random_dual_sampler(f, profile, 2000, 23, MeasureKind::kNorm, {0.1});
  EXPECT_EQ(again.back().value, samples.back().value);
}

}  // namespace
}  // namespace frame_lab
