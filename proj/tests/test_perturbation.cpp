// Copyright 2026 The QDS Toolkit Authors
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

#include <cmath>

#include "qds/perturbation.hpp"
#include "qds/random.hpp"
#include "test_support.hpp"

namespace qds {
namespace {

using testing::expect_code;
using testing::random_qds;

const Tolerances kTol;
const std::vector<double> kEps{1e-1, 1e-2, 1e-3, 1e-4};

ComplexMatrix corner_unit(std::size_t n) { return matrix_unit(n, 0, 0); }

TEST(Deviation, QdsVanishes) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const Channel ch = trial % 3 == 0 ? convert(random_qds(n, rng), Representation::kSuperop) : random_qds(n, rng);
    const DeviationMetrics m = deviation_metrics(ch);
    ASSERT_LT(m.delta_tr, 1e-12);
    ASSERT_LT(m.delta_un, 1e-12);
  }
}

TEST(Deviation, AdditiveClosedForms) {
  // Psi(x) = Phi(x) + eps a tr(x): Psi^*(1) - 1 = eps tr(a) 1 and Psi(1) - 1 = eps n a.
  for (std::size_t n : {2u, 3u, 5u}) {
    const Channel psi = additive_perturbation(depolarizing(0.5, n), 0.01, corner_unit(n));
    const DeviationMetrics m = deviation_metrics(psi);
    EXPECT_NEAR(m.delta_tr, 0.01, 1e-14);
    EXPECT_NEAR(m.delta_un, 0.01 * double(n), 1e-14);
  }
}

TEST(Deviation, MixtureVanishes) {
  Rng rng(2);
  const Channel psi = mixture_perturbation(pinching(3), 0.7, random_unitary(3, rng));
  const DeviationMetrics m = deviation_metrics(psi);
  EXPECT_LT(m.delta_tr, 1e-12);
  EXPECT_LT(m.delta_un, 1e-12);
}

TEST(Deviation, ClosedFormAgainstSampling) {
  // Sampling over rank-one unit trace-norm inputs converges to the closed form from below.
  Rng root(3);
  for (int trial = 0; trial < 500; ++trial) {
    Rng rng = root.child(trial);
    const std::size_t n = 2 + rng.index(3);
    Channel ch = random_cp_map(n, 1 + rng.index(3), rng);
    if (trial % 5 == 0) ch = convert(ch, Representation::kChoi);
    const double closed = deviation_metrics(ch).delta_tr;
    const double sampled = sampled_delta_tr(ch, 400, rng);
    ASSERT_LE(sampled, closed + 1e-9) << trial;
    // the maximizer is a rank-one u v^* of top singular vectors; verify attainment
    const ComplexMatrix a = ch.apply_hs_adjoint(ComplexMatrix::Identity(n, n)) - ComplexMatrix::Identity(n, n);
    const Svd d = svd(a);
    const ComplexMatrix x = d.v.col(0) * d.u.col(0).adjoint();
    ASSERT_NEAR(std::abs(trace(ch.apply(x) - x)), closed, 1e-9) << trial;
  }
}

TEST(Distance, IsAMetric) {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    const Channel a = random_cp_map(n, 2, rng), b = random_qds(n, rng), c = random_cp_map(n, 1, rng);
    const double ab = distance_p2(a, b), ba = distance_p2(b, a);
    EXPECT_NEAR(ab, ba, 1e-10);
    EXPECT_LE(distance_p2(a, c), ab + distance_p2(b, c) + 1e-10);
    EXPECT_NEAR(distance_p2(a, a), 0.0, 1e-12);
  }
}

TEST(Sweep, AdditiveFamilyClosedForms) {
  const std::size_t n = 3;
  const PerturbationSweep s = perturbation_sweep(depolarizing(0.5, n), PerturbationFamily::kAdditive, kEps, 2.0, kTol, 1);
  ASSERT_EQ(s.points.size(), kEps.size());
  EXPECT_TRUE(s.exact);
  EXPECT_TRUE(s.distance_decreasing);
  EXPECT_TRUE(s.bound_counterexamples.empty());
  for (const auto& pt : s.points) {
    const double e = pt.epsilon;
    EXPECT_NEAR(pt.delta_tr, e, 1e-14);
    EXPECT_NEAR(pt.delta_un, n * e, 1e-14);
    EXPECT_NEAR(pt.distance, e * std::sqrt(double(n)), 1e-12);  // eps ||a||_2 ||vec 1||
    EXPECT_NEAR(pt.fitted_cp, std::sqrt(n * e / (n + 1.0)), 1e-10);
    EXPECT_DOUBLE_EQ(pt.alpha, 0.5);
    // norm stability: |norm(Psi) - 1| <= cp (delta_tr + delta_un)^alpha
    EXPECT_LE(std::abs(pt.psi_norm - 1.0), pt.fitted_cp * std::sqrt(pt.delta_tr + pt.delta_un) + 1e-8);
  }
  EXPECT_LT(s.points.back().distance, 1e-3);
  EXPECT_NEAR(s.cp_max / s.cp_min, std::sqrt(1000.0), 1e-6);
}

TEST(Sweep, ZeroEpsIsAllZero) {
  const std::vector<double> zero{0.0};
  const PerturbationSweep s = perturbation_sweep(pinching(3), PerturbationFamily::kAdditive, zero, 2.0, kTol, 0);
  const PerturbationReport& r = s.points[0];
  EXPECT_EQ(r.delta_tr, 0.0);
  EXPECT_EQ(r.delta_un, 0.0);
  EXPECT_NEAR(r.distance, 0.0, 1e-15);
  EXPECT_EQ(r.fitted_cp, 0.0);
}

TEST(Sweep, MixtureFamilyIsLinearAndUnbounded) {
  Rng rng(5);
  const ComplexMatrix u = random_unitary(3, rng);
  PerturbationOptions opts;
  opts.unitary = u;
  const Channel phi = depolarizing(0.2, 3);
  const PerturbationSweep s = perturbation_sweep(phi, PerturbationFamily::kMixture, kEps, 2.0, kTol, 2, opts);
  const double full = distance_p2(phi, unitary_conjugation(u));
  EXPECT_TRUE(s.distance_decreasing);
  EXPECT_EQ(s.bound_counterexamples.size(), kEps.size());
  for (const auto& pt : s.points) {
    EXPECT_LT(pt.delta_tr + pt.delta_un, 1e-12);
    EXPECT_NEAR(pt.distance, pt.epsilon * full, 1e-12);
    EXPECT_TRUE(std::isinf(pt.fitted_cp));
  }
}

TEST(Sweep, OtherExponentsOneSided) {
  const PerturbationSweep s =
      perturbation_sweep(depolarizing(0.5, 2), PerturbationFamily::kAdditive, kEps, 3.0, kTol, 3);
  EXPECT_FALSE(s.exact);
  for (const auto& pt : s.points) {
    EXPECT_NEAR(pt.alpha, 1.0 / 3.0, 1e-15);
    EXPECT_GT(pt.distance, 0.0);
  }
}

TEST(Sweep, Errors) {
  const std::vector<double> w{0.5, 0.25};
  expect_code(ErrorCode::kNotQds,
              [&] { perturbation_sweep(damped_pinching(w), PerturbationFamily::kAdditive, kEps, 2.0, kTol, 0); });
  expect_code(ErrorCode::kBadExponent,
              [] { perturbation_sweep(pinching(2), PerturbationFamily::kAdditive, kEps, 0.5, kTol, 0); });
  const std::vector<double> neg{-0.1};
  expect_code(ErrorCode::kBadParameter,
              [&] { perturbation_sweep(pinching(2), PerturbationFamily::kAdditive, neg, 2.0, kTol, 0); });
  expect_code(ErrorCode::kBadParameter, [] { parse_family("quadratic"); });
  EXPECT_EQ(parse_family("mixture"), PerturbationFamily::kMixture);
  expect_code(ErrorCode::kBadParameter, [] { mixture_perturbation(pinching(2), 1.5, ComplexMatrix::Identity(2, 2)); });
  expect_code(ErrorCode::kDimensionMismatch,
              [] { additive_perturbation(pinching(2), 0.1, ComplexMatrix::Identity(3, 3)); });
}

TEST(Sweep, RandomQdsNormStability) {
  Rng root(6);
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = root.child(trial);
    const std::size_t n = 2 + rng.index(4);
    PerturbationOptions opts;
    opts.direction = random_density(n, n, rng);
    const PerturbationSweep s =
        perturbation_sweep(random_qds(n, rng), PerturbationFamily::kAdditive, kEps, 2.0, kTol, trial, opts);
    EXPECT_TRUE(s.distance_decreasing);
    for (const auto& pt : s.points)
      ASSERT_LE(std::abs(pt.psi_norm - 1.0), pt.fitted_cp * std::sqrt(pt.delta_tr + pt.delta_un) + 1e-8);
  }
}

}  // namespace
}  // namespace qds
