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

#include <unsupported/Eigen/KroneckerProduct>

#include "qds/channels.hpp"
#include "qds/json_io.hpp"
#include "qds/random.hpp"
#include "test_support.hpp"

namespace qds {
namespace {

using testing::kraus_apply;
using testing::max_abs;

// Acts identically on every matrix unit.
double action_gap(const Channel& a, const Channel& b) {
  const std::size_t n = a.dim();
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      gap = std::max(gap, max_abs(a.apply(matrix_unit(n, i, j)) - b.apply(matrix_unit(n, i, j))));
    }
  return gap;
}

// Choi matrix assembled block by block from the definition.
ComplexMatrix choi_by_blocks(const Channel& ch) {
  const auto n = static_cast<Eigen::Index>(ch.dim());
  ComplexMatrix c(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c.block(i * n, j * n, n, n) = ch.apply(matrix_unit(n, i, j));
  return c;
}

TEST(Apply, ZooExamples) {
  Rng rng(1);
  const ComplexMatrix x = random_gaussian(3, 3, rng);
  EXPECT_LT(max_abs(qds::apply(identity_channel(3), x) - x), 1e-15);

  const ComplexMatrix x2 = random_gaussian(2, 2, rng);
  const ComplexMatrix y = qds::apply(depolarizing(0.0, 2), x2);
  EXPECT_LT(max_abs(y - (trace(x2) / 2.0) * ComplexMatrix::Identity(2, 2)), 1e-15);

  ComplexMatrix a(2, 2);
  a << 0.5, 0.3, 0.3, 0.5;
  const ComplexMatrix p = qds::apply(pinching(2), a);
  EXPECT_NEAR(p(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(p(1, 1).real(), 0.5, 1e-15);
  EXPECT_EQ(p(0, 1), Complex(0));

  EXPECT_THROW(qds::apply(identity_channel(3), x2), Error);
}

TEST(Apply, DepolarizingFormula) {
  Rng rng(2);
  for (double t : {0.0, 0.3, 1.0}) {
    const ComplexMatrix x = random_gaussian(4, 4, rng);
    const ComplexMatrix want = t * x + (1 - t) * trace(x) / 4.0 * ComplexMatrix::Identity(4, 4);
    EXPECT_LT(max_abs(depolarizing(t, 4).apply(x) - want), 1e-14);
  }
}

TEST(Apply, Linearity) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.index(4);
    const Channel ch = random_cp_map(n, 1 + rng.index(3), rng);
    const ComplexMatrix x = random_gaussian(n, n, rng), y = random_gaussian(n, n, rng);
    const Complex a(rng.normal(), rng.normal()), b(rng.normal(), rng.normal());
    ASSERT_LT(max_abs(ch.apply(a * x + b * y) - (a * ch.apply(x) + b * ch.apply(y))), 1e-9);
  }
}

TEST(Apply, SparsePathMatchesDirectSum) {
  // n >= 8 with sparse Kraus operators takes the cached sparse path.
  Rng rng(4);
  for (std::size_t n : {8u, 20u}) {
    const Channel ch = shift_average(n);
    const ComplexMatrix x = random_gaussian(n, n, rng);
    EXPECT_LT(max_abs(ch.apply(x) - kraus_apply(ch.kraus()->operators, x)), 1e-13);
    const ComplexMatrix s = truncated_shift(n);
    EXPECT_LT(max_abs(ch.apply(x) - 0.5 * (x + s * x * s.adjoint())), 1e-13);
  }
}

TEST(Zoo, MixedUnitarySwap) {
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const std::vector<double> w{0.5, 0.5};
  const std::vector<ComplexMatrix> us{ComplexMatrix::Identity(2, 2), swap};
  const std::vector<double> d{0.9, 0.1};
  const ComplexMatrix y = mixed_unitary(w, us).apply(diagonal_matrix(d));
  EXPECT_NEAR(y(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(y(1, 1).real(), 0.5, 1e-15);
}

TEST(Zoo, ShiftAverageKraus) {
  const Channel ch = shift_average(8);
  ASSERT_EQ(ch.kraus()->operators.size(), 2u);
  EXPECT_LT(max_abs(ch.kraus()->operators[0] - ComplexMatrix::Identity(8, 8) / std::sqrt(2.0)), 1e-15);
  EXPECT_LT(max_abs(ch.kraus()->operators[1] - truncated_shift(8) / std::sqrt(2.0)), 1e-15);
  // Boundary leakage is reported exactly, not renormalized away.
  const QdsReport r = certify_qds(ch);
  EXPECT_NEAR(r.tp_residual, 0.5, 1e-15);
  EXPECT_NEAR(r.unital_residual, 0.5, 1e-15);
  EXPECT_FALSE(r.is_qds);
}

TEST(Zoo, DamplingIsNonUnitalUnlessAllOnes) {
  const std::vector<double> c{0.5, 0.25, 0.125};
  EXPECT_FALSE(certify_qds(damped_pinching(c)).is_qds);
  const std::vector<double> ones{1, 1, 1};
  EXPECT_TRUE(certify_qds(damped_pinching(ones)).is_qds);
}

TEST(Zoo, ParameterErrors) {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParseError;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code_of([] { depolarizing(1.5, 2); }), ErrorCode::kBadParameter);
  EXPECT_EQ(code_of([] { shift_average(1); }), ErrorCode::kBadParameter);
  const std::vector<double> w{0.7, 0.7};
  const std::vector<ComplexMatrix> us{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)};
  EXPECT_EQ(code_of([&] { mixed_unitary(w, us); }), ErrorCode::kBadParameter);
  const std::vector<double> w1{1.0};
  const std::vector<ComplexMatrix> bad{2.0 * ComplexMatrix::Identity(2, 2)};
  EXPECT_EQ(code_of([&] { mixed_unitary(w1, bad); }), ErrorCode::kBadParameter);
  EXPECT_EQ(code_of([] { channel_zoo("depolarizing", {{"t", -0.1}}); }), ErrorCode::kBadParameter);
  EXPECT_EQ(code_of([] { channel_zoo("nope", nlohmann::json::object()); }), ErrorCode::kUnknownExample);
}

TEST(Zoo, DepolarizingEndpoints) {
  EXPECT_LT(action_gap(depolarizing(1.0, 3), identity_channel(3)), 1e-15);
  EXPECT_LT(max_abs(to_choi(depolarizing(1.0, 3)).matrix - to_choi(identity_channel(3)).matrix), 1e-14);
}

TEST(Zoo, CertifiedChannelsPreserveTrace) {
  Rng rng(5);
  std::vector<Channel> zoo{identity_channel(3), depolarizing(0.4, 3), pinching(4), random_mixed_unitary(3, 3, rng),
                           unitary_conjugation(random_unitary(5, rng))};
  for (const auto& ch : zoo) {
    ASSERT_TRUE(certify_qds(ch).is_qds) << ch.meta().name;
    for (int k = 0; k < 10; ++k) {
      const ComplexMatrix x = random_gaussian(ch.dim(), ch.dim(), rng);
      ASSERT_LT(std::abs(trace(ch.apply(x)) - trace(x)), 1e-9) << ch.meta().name;
    }
  }
}

TEST(Adjoint, PairingIdentityAllRepresentations) {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    const Channel ch = random_cp_map(n, 1 + rng.index(3), rng);
    for (Representation r : {Representation::kKraus, Representation::kChoi, Representation::kSuperop}) {
      const Channel c = convert(ch, r);
      const Channel adj = adjoint(c);
      const ComplexMatrix x = random_gaussian(n, n, rng), y = random_gaussian(n, n, rng);
      ASSERT_LT(std::abs((y * c.apply(x)).trace() - (adj.apply(y) * x).trace()), 1e-9);
      ASSERT_LT(action_gap(adjoint(adj), c), 1e-9);
    }
  }
}

TEST(Adjoint, Examples) {
  Rng rng(7);
  const ComplexMatrix u = random_unitary(3, rng);
  EXPECT_LT(action_gap(adjoint(unitary_conjugation(u)), unitary_conjugation(u.adjoint())), 1e-12);
  EXPECT_LT(action_gap(adjoint(depolarizing(0.3, 3)), depolarizing(0.3, 3)), 1e-14);
  EXPECT_LT(action_gap(adjoint(pinching(3)), pinching(3)), 1e-15);
  // Kraus adjoint is {K^*}.
  const Channel ch = random_cp_map(3, 2, rng);
  const Channel adj = adjoint(ch);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LT(max_abs(adj.kraus()->operators[i] - ch.kraus()->operators[i].adjoint()), 1e-15);
  }
}

TEST(Choi, MatchesBlockDefinition) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel ch = random_cp_map(3, 2, rng);
    ASSERT_LT(max_abs(kraus_to_choi(*ch.kraus()).matrix - choi_by_blocks(ch)), 1e-13);
  }
  // identity channel: unnormalized maximally entangled projector
  const ComplexMatrix c = kraus_to_choi(*identity_channel(3).kraus()).matrix;
  const ComplexVector omega = vec(ComplexMatrix::Identity(3, 3));
  EXPECT_LT(max_abs(c - omega * omega.adjoint()), 1e-15);
  EXPECT_NEAR(trace(c).real(), 3.0, 1e-15);
}

TEST(Choi, RoundTripAndRank) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    const std::size_t r = 1 + rng.index(3);
    const Channel ch = random_cp_map(n, r, rng);
    const KrausSet back = choi_to_kraus(kraus_to_choi(*ch.kraus()));
    ASSERT_EQ(back.operators.size(), r);
    ASSERT_LT(action_gap(Channel(back), ch), 1e-9);
  }
}

TEST(Choi, TransposeIsNotCp) {
  const Channel t = transpose_map(3);
  EXPECT_NEAR(choi_min_eigenvalue(t), -1.0, 1e-12);
  try {
    choi_to_kraus(*t.choi());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCompletelyPositive);
  }
  // Transpose is positive though, which the sampling probe sees.
  Rng rng(10);
  EXPECT_TRUE(positivity_probe(t, 50, rng).positive_on_samples);
  const QdsReport rep = certify_qds(t);
  EXPECT_FALSE(rep.is_qds);
  EXPECT_LE(rep.choi_min_eig, -0.5);
}

TEST(Choi, RandomKrausIsPsd) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    const Channel ch = random_cp_map(n, 1 + rng.index(n * n), rng);
    ASSERT_GE(choi_min_eigenvalue(ch), -1e-10);
    ASSERT_GE(choi_min_eigenvalue(convert(ch, Representation::kChoi)), -1e-10);
  }
}

TEST(Superop, UnitaryIsConjKronU) {
  Rng rng(12);
  const ComplexMatrix u = random_unitary(3, rng);
  const ComplexMatrix s = to_superop(unitary_conjugation(u)).matrix;
  const ComplexMatrix want = Eigen::kroneckerProduct(u.conjugate(), u).eval();
  EXPECT_LT(max_abs(s - want), 1e-13);
}

TEST(Superop, ActsOnVec) {
  Rng rng(13);
  const Channel ch = random_cp_map(4, 3, rng);
  const ComplexMatrix s = to_superop(ch).matrix;
  for (int k = 0; k < 5; ++k) {
    const ComplexMatrix x = random_gaussian(4, 4, rng);
    ASSERT_LT((s * vec(x) - vec(kraus_apply(ch.kraus()->operators, x))).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Convert, AllPairsPreserveAction) {
  Rng rng(14);
  const Channel ch = random_cp_map(3, 2, rng);
  const std::vector<Representation> reps{Representation::kKraus, Representation::kChoi, Representation::kSuperop};
  for (auto a : reps)
    for (auto b : reps) ASSERT_LT(action_gap(convert(convert(ch, a), b), ch), 1e-10);
}

TEST(Certify, Examples) {
  const QdsReport dep = certify_qds(depolarizing(0.5, 4));
  EXPECT_TRUE(dep.is_qds);
  EXPECT_LT(dep.tp_residual, 1e-12);
  EXPECT_LT(dep.unital_residual, 1e-12);

  // Psi(x) = Phi(x) + eps * a * tr(x), a = diag(1, 0): Psi(1) - 1 = 2 eps a.
  const double eps = 0.01;
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1;
  const ComplexMatrix s = to_superop(depolarizing(0.5, 2)).matrix + eps * vec(a) * vec(ComplexMatrix::Identity(2, 2)).transpose();
  const QdsReport psi = certify_qds(Channel(SuperopMatrix{2, s}));
  EXPECT_FALSE(psi.is_qds);
  EXPECT_NEAR(psi.unital_residual, 2 * eps, 1e-15);
  EXPECT_NEAR(psi.tp_residual, eps, 1e-15);

  Rng rng(15);
  EXPECT_TRUE(certify_qds(unitary_conjugation(random_unitary(4, rng))).is_qds);
}

TEST(Certify, ReportInvariant) {
  Rng rng(16);
  const Tolerances tol;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    Channel ch = trial % 3 == 0 ? random_mixed_unitary(n, 2, rng) : random_cp_map(n, 2, rng);
    if (trial % 5 == 0) ch = convert(ch, Representation::kChoi);
    const QdsReport r = certify_qds(ch, tol);
    const bool want = r.tp_residual <= tol.tp_tol && r.unital_residual <= tol.un_tol &&
                      r.choi_min_eig >= -tol.psd_tol && r.choi_hermitian;
    ASSERT_EQ(r.is_qds, want);
  }
}

TEST(Compose, UnitaryInverse) {
  Rng rng(17);
  const ComplexMatrix u = random_unitary(3, rng);
  const Channel c = compose(unitary_conjugation(u), unitary_conjugation(u.adjoint()));
  EXPECT_LT(action_gap(c, identity_channel(3)), 1e-12);
}

TEST(Json, ChannelRoundTripEveryRepresentation) {
  Rng rng(18);
  const Channel ch = random_cp_map(3, 2, rng);
  for (Representation r : {Representation::kKraus, Representation::kChoi, Representation::kSuperop}) {
    const nlohmann::json j = channel_to_json(ch, r);
    const Channel back = channel_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.representation(), r);
    EXPECT_LT(action_gap(back, ch), 1e-12);
    EXPECT_EQ(channel_to_json(back).dump(), j.dump());  // byte-stable
  }
}

TEST(Json, MatrixFormat) {
  const nlohmann::json ok = nlohmann::json::parse(R"({"dim": 2, "entries": [[1,0],[0,2],[0,-2],[3,0]]})");
  const ComplexMatrix m = matrix_from_json(ok);
  EXPECT_EQ(m(0, 1), Complex(0, 2));  // row-major
  EXPECT_EQ(m(1, 0), Complex(0, -2));
  EXPECT_EQ(matrix_to_json(m), ok);
  for (const char* bad : {R"({"dim": 2, "entries": [[1,0],[0,0],[0,0]]})", R"({"dim": 0, "entries": []})",
                          R"({"entries": [[1,0]]})", R"({"dim": 1, "entries": [[1]]})", R"([1,2])"}) {
    try {
      matrix_from_json(nlohmann::json::parse(bad));
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError) << bad;
    }
  }
}

TEST(Apply, UnitShortcutMatchesApply) {
  Rng rng(77);
  const std::vector<Channel> chans{shift_average(9), pinching(10), random_cp_map(4, 2, rng),
                                   convert(random_cp_map(3, 2, rng), Representation::kChoi),
                                   convert(random_cp_map(3, 1, rng), Representation::kSuperop)};
  for (const auto& ch : chans) {
    const std::size_t n = ch.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ASSERT_LT(max_abs(ch.apply_unit(i, j) - ch.apply(matrix_unit(n, i, j))), 1e-14) << ch.meta().name;
  }
}

}  // namespace
}  // namespace qds
