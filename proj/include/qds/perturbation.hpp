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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qds/channels.hpp"
#include "qds/norms.hpp"

namespace qds {

struct DeviationMetrics {
  double delta_tr = 0.0;  // sup_{||x||_1 = 1} |tr(Psi(x) - x)|
  double delta_un = 0.0;  // ||Psi(1) - 1||_inf
};

// delta_tr in closed form: tr(Psi(x) - x) = tr(A x) with A_ji = tr Psi(E_ij) - delta_ij,
// so the supremum is ||A||_inf by trace-norm duality. For Kraus maps, A = Psi^*(1) - 1.
DeviationMetrics deviation_metrics(const Channel& psi);

// Brute-force lower estimate of delta_tr from random rank-one unit-trace-norm
// inputs u v^* (the extreme points of the trace-norm ball).
double sampled_delta_tr(const Channel& psi, std::size_t samples, Rng& rng);

// Exact ||a - b||_{2->2}: top singular value of the superoperator difference.
double distance_p2(const Channel& a, const Channel& b, std::uint64_t seed = 0);

// Psi(x) = Phi(x) + eps a tr(x).
Channel additive_perturbation(const Channel& phi, double eps, const ComplexMatrix& a);
// Psi = t Phi + (1 - t) Ad_u.
Channel mixture_perturbation(const Channel& phi, double t, const ComplexMatrix& u);

enum class PerturbationFamily { kAdditive, kMixture };
PerturbationFamily parse_family(const std::string& name);
const char* family_name(PerturbationFamily f);

struct PerturbationReport {
  double epsilon = 0.0;
  double delta_tr = 0.0;
  double delta_un = 0.0;
  double distance = 0.0;  // exact at p = 2, ascent lower bound otherwise
  double alpha = 0.5;     // min(1/p, 1/q)
  // distance / (delta_tr + delta_un)^alpha; 0 when both vanish with zero
  // distance, +inf when the metrics vanish but the maps differ.
  double fitted_cp = 0.0;
  double psi_norm = 0.0;  // ||Psi||_{2->2}
};

struct PerturbationSweep {
  double p = 2.0;
  PerturbationFamily family = PerturbationFamily::kAdditive;
  std::vector<PerturbationReport> points;  // in eps_grid order
  bool exact = true;                       // false when p != 2 (one-sided distances)
  bool distance_decreasing = true;         // as eps decreases
  double cp_max = 0.0;
  double cp_min = 0.0;
  // Points where both metrics vanish (within 1e-12) but the distance does
  // not: the bound ||Phi - Psi|| <= C (delta_tr + delta_un)^alpha fails for
  // every finite constant.
  std::vector<double> bound_counterexamples;
};

struct PerturbationOptions {
  std::optional<ComplexMatrix> direction;  // additive: a (default diag(1, 0, ..., 0))
  std::optional<ComplexMatrix> unitary;    // mixture: u (default seeded Haar unitary)
  AscentOptions ascent;
};

// Requires phi certified QDS. Additive family uses eps directly; the mixture
// family uses t = 1 - eps.
PerturbationSweep perturbation_sweep(const Channel& phi, PerturbationFamily family, std::span<const double> eps_grid,
                                     double p, const Tolerances& tol, std::uint64_t seed,
                                     const PerturbationOptions& opts = {});

}  // namespace qds
