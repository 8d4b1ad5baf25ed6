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

#include <set>

#include "qds/json_io.hpp"
#include "qds/reports.hpp"
#include "qds/selftest.hpp"
#include "test_support.hpp"

namespace qds {
namespace {

using nlohmann::json;
using testing::expect_code;
using testing::max_abs;

TEST(Tolerances, SetGetAndErrors) {
  Tolerances t;
  EXPECT_DOUBLE_EQ(t.get("maj_tol"), 1e-9);
  EXPECT_DOUBLE_EQ(t.get("realize_tol"), 1e-8);
  EXPECT_DOUBLE_EQ(t.get("strict_floor"), 1e-12);
  t.set("psd_tol", 1e-6);
  EXPECT_DOUBLE_EQ(t.psd_tol, 1e-6);
  EXPECT_EQ(t.as_map().size(), 15u);
  expect_code(ErrorCode::kBadParameter, [&] { t.set("bogus_tol", 1.0); });
  expect_code(ErrorCode::kBadParameter, [&] { t.set("psd_tol", -1.0); });
  expect_code(ErrorCode::kBadParameter, [&] { t.get("bogus_tol"); });
}

TEST(RunConfigJson, RecordsOverridesAndSeed) {
  RunConfig c;
  c.seed = 42;
  c.override_tolerance("ds_tol", 1e-7);
  const json j = to_json(c);
  EXPECT_EQ(j.at("seed"), 42);
  EXPECT_DOUBLE_EQ(j.at("tolerances").at("ds_tol").get<double>(), 1e-7);
  EXPECT_DOUBLE_EQ(j.at("overrides").at("ds_tol").get<double>(), 1e-7);
  EXPECT_EQ(j.at("output"), "-");
  EXPECT_EQ(j.at("format"), "json");
  const json e = envelope(json{{"x", 1}}, c);
  EXPECT_EQ(e.at("tool_version"), tool_version());
  EXPECT_EQ(e.at("run_config"), j);
  EXPECT_EQ(e.at("x"), 1);
}

TEST(MatrixJson, RoundTripAndErrors) {
  Rng rng(1);
  const ComplexMatrix a = random_gaussian(3, 3, rng);
  const ComplexMatrix b = matrix_from_json(json::parse(matrix_to_json(a).dump()));
  EXPECT_EQ(max_abs(a - b), 0.0);  // doubles survive the text round trip exactly
  expect_code(ErrorCode::kParseError, [] { matrix_from_json(json{{"dim", 2}, {"entries", json::array()}}); });
  expect_code(ErrorCode::kParseError, [] { matrix_from_json(json::array()); });
  expect_code(ErrorCode::kParseError, [] { parse_json_text("{not json"); });
}

TEST(Exponents, InfinityAsString) {
  EXPECT_EQ(exponent_to_json(kInfinity), "inf");
  EXPECT_EQ(exponent_to_json(1.5), 1.5);
  EXPECT_TRUE(std::isinf(exponent_from_json(json("inf"))));
  EXPECT_DOUBLE_EQ(parse_exponent("3"), 3.0);
  EXPECT_TRUE(std::isinf(parse_exponent("inf")));
  EXPECT_EQ(number_or_inf(-kInfinity), "-inf");
  EXPECT_TRUE(number_or_inf(std::nan("")).is_null());
}

TEST(ChannelJson, AllRepresentationsRoundTrip) {
  Rng rng(2);
  const Channel ch = random_cp_map(3, 2, rng);
  for (Representation r : {Representation::kKraus, Representation::kChoi, Representation::kSuperop}) {
    const Channel back = channel_from_json(json::parse(channel_to_json(ch, r).dump()));
    EXPECT_EQ(back.representation(), r);
    EXPECT_LT(max_abs(to_superop(back).matrix - to_superop(ch).matrix), 1e-12);
  }
}

TEST(ReportJson, EveryReportReparses) {
  const Tolerances tol;
  RunConfig cfg;
  std::vector<json> bodies;
  bodies.push_back(to_json(certify_qds(depolarizing(0.5, 2), tol)));
  bodies.push_back(to_json(induced_norm(depolarizing(0.5, 2), kInfinity, tol, 0)));
  const std::vector<double> grid{1.0, 2.0};
  bodies.push_back(to_json(interpolation_sweep(pinching(2), grid, tol, 0)));
  bodies.push_back(to_json(diagonal_contraction_probe(depolarizing(0.5, 2), 2.0, tol, 0)));
  const DensityMatrix rho(ComplexMatrix::Identity(2, 2) / 2.0);
  const DensityMatrix sigma(matrix_unit(2, 0, 0));
  bodies.push_back(to_json(realize_channel(rho, sigma, tol), tol));
  bodies.push_back(to_json(convex_function_test(rho, sigma, tol)));
  bodies.push_back(to_json(entropy_monotonicity_check(pinching(2), rho, tol)));
  const std::vector<double> eps{0.1, 0.01};
  bodies.push_back(to_json(perturbation_sweep(pinching(2), PerturbationFamily::kMixture, eps, 2.0, tol, 0)));
  const std::vector<std::size_t> ranks{1, 2};
  bodies.push_back(to_json(scan("damped_pinching", 4, 2.0, ranks)));
  bodies.push_back(to_json(run_selftest(1, tol)));
  for (const auto& b : bodies) {
    const std::string text = envelope(b, cfg).dump(2);
    const json back = json::parse(text);
    EXPECT_EQ(back.dump(2), text);
    EXPECT_TRUE(back.contains("tool_version"));
  }
  // "inf" fitted constants survive as strings
  EXPECT_EQ(bodies[7].at("points").at(0).at("fitted_cp"), "inf");
}

TEST(ReportJson, MajorizationCertificateCarriesRealizer) {
  const DensityMatrix rho(ComplexMatrix::Identity(3, 3) / 3.0);
  const DensityMatrix sigma(matrix_unit(3, 1, 1));
  const json j = to_json(realize_channel(rho, sigma));
  ASSERT_TRUE(j.contains("realizing_channel"));
  const Channel ch = channel_from_json(j.at("realizing_channel"));
  EXPECT_EQ(ch.representation(), Representation::kKraus);
  EXPECT_LT(max_abs(ch.apply(sigma.matrix()) - rho.matrix()), 1e-12);
}

TEST(Selftest, CoversEveryModuleAndPasses) {
  const SelftestReport r = run_selftest(42);
  EXPECT_TRUE(r.passed);
  std::set<std::string> modules;
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.passed) << c.module << "." << c.op << ": " << c.detail;
    modules.insert(c.module);
  }
  for (const char* m : {"matcore", "channels", "norms", "majorization", "entropy", "perturbation", "truncation"})
    EXPECT_TRUE(modules.count(m)) << m;
}

TEST(Selftest, Deterministic) {
  EXPECT_EQ(to_json(run_selftest(7)).dump(), to_json(run_selftest(7)).dump());
}

}  // namespace
}  // namespace qds
