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

#include "qds/reports.hpp"

#include <cmath>

#include "qds/json_io.hpp"

namespace qds {

using nlohmann::json;

const char* tool_version() { return QDS_VERSION_STRING; }

json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

namespace {

json vector_json(const RealVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

json to_json(const QdsReport& r) {
  return {{"tp_residual", r.tp_residual},
          {"unital_residual", r.unital_residual},
          {"choi_min_eig", r.choi_min_eig},
          {"choi_hermitian", r.choi_hermitian},
          {"is_qds", r.is_qds}};
}

json to_json(const InducedNormResult& r) {
  return {{"p", exponent_to_json(r.p)},
          {"lower", r.lower_bound},
          {"upper", number_or_inf(r.upper_bound)},
          {"method", norm_method_name(r.method)},
          {"witness", matrix_to_json(r.witness)}};
}

json to_json(const SweepReport& r) {
  json results = json::array();
  for (const auto& x : r.results) results.push_back(to_json(x));
  return {{"results", results}, {"violations", r.violations}, {"ok", r.ok}};
}

json to_json(const DiagonalProbeReport& r) {
  json hits = json::array();
  for (const auto& h : r.hits) hits.push_back({{"mask", h.mask}, {"delta", h.delta}});
  return {{"p", exponent_to_json(r.p)},
          {"scanned", r.scanned},
          {"exhaustive", r.exhaustive},
          {"hits", hits},
          {"best_delta", r.best_delta}};
}

json to_json(const BirkhoffDecomposition& d) {
  return {{"weights", d.weights}, {"permutations", d.permutations}, {"terms", d.weights.size()}};
}

json to_json(const MajorizationCertificate& c, const Tolerances& tol) {
  json j = {{"holds", c.holds},
            {"partial_sum_slack", vector_json(c.partial_sum_slack)},
            {"lambda_rho", vector_json(c.lambda_rho)},
            {"lambda_sigma", vector_json(c.lambda_sigma)}};
  if (c.ds_matrix) j["ds_matrix"] = real_matrix_to_json(c.ds_matrix->entries());
  if (c.decomposition) j["decomposition"] = to_json(*c.decomposition);
  if (c.realizing_channel) {
    j["realizing_channel"] = channel_to_json(*c.realizing_channel, Representation::kKraus, tol);
    j["realize_residual"] = c.realize_residual;
    j["channel_qds"] = c.channel_qds;
    j["degenerate_basis"] = c.degenerate_basis;
  }
  return j;
}

json to_json(const ConvexTestReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"family", e.family},
                       {"parameter", e.parameter},
                       {"trace_rho", e.trace_rho},
                       {"trace_sigma", e.trace_sigma},
                       {"violated", e.violated}});
  }
  return {{"entries", entries}, {"violations", r.violations}};
}

json to_json(const EntropyReport& r) {
  return {{"s_in", r.s_in},
          {"s_out", r.s_out},
          {"delta", r.delta},
          {"strict_expected", r.strict_expected},
          {"strict_observed", r.strict_observed},
          {"monotone", r.monotone},
          {"bound_log_d", r.bound_log_d}};
}

json to_json(const PerturbationSweep& s) {
  json points = json::array();
  for (const auto& r : s.points) {
    points.push_back({{"epsilon", r.epsilon},
                      {"delta_tr", r.delta_tr},
                      {"delta_un", r.delta_un},
                      {"distance", r.distance},
                      {"alpha", r.alpha},
                      {"fitted_cp", number_or_inf(r.fitted_cp)},
                      {"psi_norm", r.psi_norm}});
  }
  return {{"p", exponent_to_json(s.p)},
          {"family", family_name(s.family)},
          {"points", points},
          {"exact", s.exact},
          {"distance_decreasing", s.distance_decreasing},
          {"cp_max", number_or_inf(s.cp_max)},
          {"cp_min", number_or_inf(s.cp_min)},
          {"bound_counterexamples", s.bound_counterexamples}};
}

json to_json(const TailScan& s) {
  json points = json::array();
  for (const auto& [rank, tail] : s.points) points.push_back({{"rank", rank}, {"tail_norm", tail}});
  return {{"example_name", s.example_name},
          {"p", exponent_to_json(s.p)},
          {"ambient_dim", s.ambient_dim},
          {"points", points},
          {"monotone", s.monotone},
          {"classification", s.classification},
          {"notes", s.notes}};
}

json to_json(const RunConfig& c) {
  return {{"seed", c.seed}, {"tolerances", c.tol.as_map()}, {"overrides", c.overrides},
          {"output", c.output}, {"format", c.format}};
}

json envelope(json body, const RunConfig& config) {
  body["tool_version"] = tool_version();
  body["run_config"] = to_json(config);
  return body;
}

}  // namespace qds
