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

#include "frame_lab/optimality.hpp"
#include "reference_frames.hpp"
#include "support.hpp"

namespace frame_lab {
namespace {

using testing::TestRng;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

// beta and the optimal two-erasure value straight from the weights.
std::pair<double, double> oracle_beta_zeta2(const std::vector<double>& q, double n) {
  double s1 = 0, s2 = 0, cross = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    s1 += 1 / q[i];
    s2 += 1 / (q[i] * q[i]);
    for (std::size_t j = 0; j < q.size(); ++j)
      if (i != j) cross += 1 / (q[i] * q[j]);
  }
  const double beta = n - s2;
  const double zeta2 = beta >= 0 ? 1 + std::sqrt(beta / cross) : std::sqrt((n * n - n) / (n * n - s2));
  return {beta, zeta2};
}

TEST(OptimalValues, ClosedFormExamples) {
  const auto mb = optimal_values(uniform_profile(3, 2));
  EXPECT_NEAR(mb.beta, 2.0 / 3, 1e-14);
  EXPECT_NEAR(mb.zeta2, 1.5, 1e-14);
  EXPECT_NEAR(mb.cross_weight_sum, 8.0 / 3, 1e-14);
  EXPECT_NEAR(mb.two_erasure_target, 0.25, 1e-14);
  EXPECT_EQ(mb.zeta1, 1);
  EXPECT_EQ(mb.epsilon1, 1);

  const auto negative = optimal_values(ProbabilityProfile({0.9, 0.1}, 2));
  EXPECT_NEAR(negative.beta, -1.28, 1e-12);
  EXPECT_NEAR(negative.zeta2, 5.0 / 3, 1e-12);

  EXPECT_NEAR(optimal_values(uniform_profile(4, 2)).zeta2, 1 + std::sqrt(1.0 / 3), 1e-14);
  // a single vector leaves no weight to define, so the profile itself is rejected
  EXPECT_EQ(code_of([] { optimal_values(ProbabilityProfile({1.0}, 1)); }), ErrorCode::kDegenerateWeight);
}

TEST(OptimalValues, MatchDirectSums) {
  TestRng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = rng.integer(1, 6);
    const Index count = rng.integer(std::max<Index>(n, 2), 3 * n + 2);
    const auto p = testing::random_probabilities(count, rng, 0.2);
    const ProbabilityProfile profile(p, n);
    const auto [beta, zeta2] = oracle_beta_zeta2(testing::oracle_weights(p, n), double(n));
    const auto v = optimal_values(profile);
    EXPECT_NEAR(v.beta, beta, 1e-10);
    if (std::isfinite(zeta2)) EXPECT_NEAR(v.zeta2, zeta2, 1e-9 * zeta2);
  }
}

TEST(Certificates, ObliqueFrame) {
  const auto f = reference::oblique_frame();
  const auto profile = reference::oblique_profile();
  const auto spectral = canonical_spectral_certificate(f, profile);
  EXPECT_EQ(spectral.partition.upsilon1, std::vector<Index>{2});
  EXPECT_EQ(spectral.partition.upsilon2, (std::vector<Index>{0, 1}));
  EXPECT_EQ(spectral.partition.dim_intersection, 1);
  EXPECT_NEAR(spectral.partition.c, 4.0 / 3, 1e-12);
  EXPECT_FALSE(*spectral.certificate.conclusion);
  EXPECT_NEAR(*spectral.certificate.detail("q_norm_sq[0]"), 8.0 / 9, 1e-12);

  const auto norm = canonical_norm_certificate(f, profile);
  EXPECT_EQ(norm.partition.dim_intersection, 1);
  EXPECT_FALSE(*norm.certificate.conclusion);

  const auto pair = canonical_dual(f);
  EXPECT_FALSE(*delta1_membership(pair, profile).conclusion);
  EXPECT_NEAR(*delta1_membership(pair, profile).value, 4.0 / 3, 1e-12);
  EXPECT_FALSE(*gamma1_membership(pair, profile).conclusion);
  EXPECT_EQ(code_of([&] { delta2_membership(pair, profile); }), ErrorCode::kNotInDelta1);
  EXPECT_FALSE(*is_probabilistic_uniform_parseval(f, profile).conclusion);
  EXPECT_EQ(code_of([&] { parseval_equivalence_report(f, profile); }), ErrorCode::kNotParseval);
}

TEST(Certificates, TightFrame) {
  const auto f = reference::tight_frame();
  const auto profile = reference::tight_profile();
  EXPECT_NEAR(f.lower_bound(), 3, 1e-12);
  EXPECT_NEAR(f.upper_bound(), 3, 1e-12);
  for (const auto& pc : {canonical_spectral_certificate(f, profile), canonical_norm_certificate(f, profile)}) {
    EXPECT_EQ(pc.partition.upsilon1.size(), 4u);
    EXPECT_TRUE(pc.partition.upsilon2.empty());
    EXPECT_EQ(pc.partition.dim_h2, 0);
    EXPECT_TRUE(*pc.certificate.conclusion);
    EXPECT_NEAR(*pc.certificate.value, 1, 1e-12);
  }
  const auto pair = canonical_dual(f);
  EXPECT_TRUE(*delta1_membership(pair, profile).conclusion);
  const auto gamma = gamma1_membership(pair, profile);
  EXPECT_TRUE(*gamma.conclusion);
  EXPECT_EQ(*gamma.detail("implies_one_uniform"), 1.0);
  EXPECT_NEAR(*gamma.value, 1, 1e-12);
  const auto one = is_one_uniform(pair, profile);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(*one.detail("q_abs_fg[" + std::to_string(i) + "]"), 1, 1e-12);
  EXPECT_FALSE(*is_probabilistic_uniform_parseval(f, profile).conclusion);
}

TEST(Certificates, ScaledTightFrameIsUniformParseval) {
  const FrameXd f(reference::tight_frame().synthesis() / std::sqrt(3.0));
  const auto profile = reference::tight_profile();
  EXPECT_TRUE(*is_probabilistic_uniform_parseval(f, profile).conclusion);
  const auto report = parseval_equivalence_report(f, profile);
  EXPECT_TRUE(report.all_hold());
  EXPECT_TRUE(*report.conclusion);
  EXPECT_EQ(*report.detail("canonical_spectral_optimal"), 1.0);
  EXPECT_EQ(*report.detail("canonical_norm_optimal"), 1.0);
}

TEST(Certificates, OrthonormalBasis) {
  const auto f = build_frame<double>(2, std::vector<std::vector<double>>{{1, 0}, {0, 1}});
  const ProbabilityProfile uniform({0.5, 0.5}, 2);
  const auto pair = canonical_dual(f);
  EXPECT_TRUE(*delta1_membership(pair, uniform).conclusion);
  EXPECT_TRUE(*is_probabilistic_uniform_parseval(f, uniform).conclusion);
  const auto unequal = ProbabilityProfile({0.9, 0.1}, 2);
  EXPECT_FALSE(*delta1_membership(pair, unequal).conclusion);
  // with no freedom in the dual, both searches report a zero gap
  EXPECT_TRUE(*parseval_equivalence_report(f, unequal).conclusion);
  const auto norm = canonical_norm_certificate(f, unequal);
  EXPECT_TRUE(*norm.certificate.conclusion);
  EXPECT_EQ(*norm.certificate.detail("unique"), 1.0);
}

TEST(Certificates, MercedesBenzTwoErasures) {
  const auto f = reference::mercedes_benz_frame();
  const auto profile = uniform_profile(3, 2);
  const auto pair = canonical_dual(f);
  EXPECT_TRUE(*delta1_membership(pair, profile).conclusion);
  const auto two = delta2_membership(pair, profile);
  EXPECT_TRUE(*two.conclusion);
  EXPECT_NEAR(*two.value, 1.5, 1e-12);
  EXPECT_NEAR(*two.detail("zeta2"), 1.5, 1e-12);
  EXPECT_TRUE(*canonical_two_erasure_certificate(f, profile).conclusion);
  EXPECT_TRUE(*is_two_uniform(pair, uniform_profile(3, 2)).conclusion == false);

  const auto prediction = two_erasure_prediction(pair, profile);
  EXPECT_TRUE(*prediction.conclusion);
  EXPECT_NEAR(*prediction.value, 1.5, 1e-9);
  EXPECT_NEAR(*prediction.detail("c"), 0.25, 1e-12);
  EXPECT_NEAR(*prediction.detail("r1_plus_sqrt_c"), 1.5, 1e-12);
  EXPECT_NEAR(*prediction.detail("r1_plus_sqrt_4c"), 2.0, 1e-12);
  EXPECT_EQ(*prediction.detail("argmax_count"), 3.0);
  EXPECT_FALSE(prediction.notes.empty());
}

TEST(Certificates, TwoErasurePredictionSingleMaximizer) {
  // G = S^{-1} T (I - 1 s^T) is a dual because T s = 0; the weighted cross products are constant
  MatrixX<double> t(2, 3);
  t << 1, -1, 0, 2, 0, -3;
  const Eigen::Vector3d s(3.0 / 8, 3.0 / 8, 1.0 / 4);
  ASSERT_LE((t * s).norm(), 1e-15);
  const MatrixX<double> m = Eigen::Matrix3d::Identity() - Eigen::Vector3d::Ones() * s.transpose();
  const MatrixX<double> g = (t * t.transpose()).inverse() * t * m;
  const DualPair<double> pair{FrameXd(t), FrameXd(g)};
  const ProbabilityProfile profile({0.25, 0.25, 0.5}, 2);
  const auto cert = two_erasure_prediction(pair, profile);
  EXPECT_EQ(*cert.detail("argmax_count"), 1.0);
  EXPECT_TRUE(cert.notes.empty());
  const double enumerated = testing::oracle_measure(t, g, profile.weights(), 2, true);
  EXPECT_NEAR(*cert.value, enumerated, 1e-9);
  EXPECT_TRUE(*cert.conclusion);

  // a generic dual breaks the constant cross-product hypothesis
  const auto canonical = canonical_dual(FrameXd(t));
  EXPECT_EQ(code_of([&] { two_erasure_prediction(canonical, profile); }), ErrorCode::kHypothesisFailed);
}

TEST(Certificates, NegativeBetaIsReported) {
  const auto f = build_frame<double>(2, std::vector<std::vector<double>>{{1, 0}, {0, 1}});
  const auto cert = canonical_two_erasure_certificate(f, ProbabilityProfile({0.9, 0.1}, 2));
  EXPECT_FALSE(*cert.conclusion);
  ASSERT_FALSE(cert.notes.empty());
  EXPECT_NE(cert.notes.back().find("NegativeBeta"), std::string::npos);
}

TEST(Certificates, ConditionNamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(ConditionId::kParsevalEquivalence); ++k) {
    const auto id = static_cast<ConditionId>(k);
    EXPECT_EQ(condition_id_from_string(to_string(id)), id);
  }
  EXPECT_THROW(condition_id_from_string("bogus"), Error);
}

TEST(LowerBounds, OneUniformDualsAttainOne) {
  TestRng rng(107);
  int built = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = rng.integer(2, 3);
    const Index count = rng.integer(n * n / (n - 1) + 1, 3 * n);
    const auto t = testing::random_synthesis<cplx>(n, count, rng);
    const auto p = testing::random_probabilities(count, rng, 0.2);
    const ProbabilityProfile profile(p, n);
    const auto g = testing::oracle_one_uniform_dual(t, profile.weights(), rng.uniform(0, 1), rng);
    if (!g) continue;
    ++built;
    const DualPair<cplx> pair{FrameXcd(t), FrameXcd(*g), 1e-9};
    const auto cert = delta1_membership(pair, profile);
    EXPECT_TRUE(*cert.conclusion);
    EXPECT_NEAR(*cert.value, 1, 1e-9);
    EXPECT_NEAR(testing::oracle_measure(t, *g, profile.weights(), 1, true), 1, 1e-9);
  }
  EXPECT_GE(built, 50);
}

TEST(LowerBounds, EqualityExactlyOnOptimalSets) {
  TestRng rng(109);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = rng.integer(1, 4);
    const Index count = rng.integer(n + 1, 3 * n + 1);
    const auto t = testing::random_synthesis<cplx>(n, count, rng);
    const auto g = testing::oracle_random_dual(t, rng.uniform(0, 1), rng);
    const ProbabilityProfile profile(testing::random_probabilities(count, rng), n);
    const DualPair<cplx> pair{FrameXcd(t), FrameXcd(g), 1e-9};
    const auto r1 = delta1_membership(pair, profile);
    const auto d1 = gamma1_membership(pair, profile);
    EXPECT_GE(*r1.value, 1 - 1e-9);
    EXPECT_GE(*d1.value, *r1.value - 1e-12);
    EXPECT_EQ(std::abs(*r1.value - 1) <= 1e-9, *r1.conclusion);
    EXPECT_EQ(std::abs(*d1.value - 1) <= 1e-9, *d1.conclusion);
  }
}

TEST(LowerBounds, NormOptimalPairsAreOneUniform) {
  TestRng rng(113);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.integer(1, 3);
    const Index count = rng.integer(n + 1, n + 5);
    const auto c = testing::oracle_norm_optimal_case(n, count, rng);
    const ProbabilityProfile profile(c.p, n);
    const DualPair<cplx> pair{FrameXcd(c.t), FrameXcd(c.g), 1e-9};
    const auto gamma = gamma1_membership(pair, profile);
    EXPECT_TRUE(*gamma.conclusion);
    EXPECT_NEAR(*gamma.value, 1, 1e-9);
    EXPECT_EQ(*gamma.detail("implies_one_uniform"), 1.0);
    EXPECT_TRUE(*is_one_uniform(pair, profile).conclusion);
    // the untouched Parseval frame underneath is a uniform Parseval frame for this profile
    EXPECT_TRUE(*is_probabilistic_uniform_parseval(FrameXcd(c.phi), profile).conclusion);
  }
}

TEST(ParsevalEquivalence, VerdictsAgreeOnRandomParsevalFrames) {
  TestRng rng(127);
  int optimal = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const Index n = 2 + trial % 2;
    const Index count = rng.integer(n + 1, 7);
    MatrixX<cplx> t;
    std::vector<double> p;
    if (trial % 3 == 0) {
      auto c = testing::oracle_norm_optimal_case(n, count, rng);
      t = c.phi;
      p = c.p;
    } else {
      t = testing::random_parseval_synthesis<cplx>(n, count, rng);
      p = testing::random_probabilities(count, rng);
    }
    const FrameXcd f(t);
    const ProbabilityProfile profile(p, n);
    SearchOptions options;
    options.restarts = 6;
    const auto report = parseval_equivalence_report(f, profile, 1e-9, options);
    EXPECT_TRUE(*report.conclusion) << "spectral gap " << *report.detail("spectral_gap") << " norm gap "
                                    << *report.detail("norm_gap");
    optimal += *report.detail("canonical_spectral_optimal") == 1.0;
  }
  EXPECT_GE(optimal, 4);
}

}  // namespace
}  // namespace frame_lab
