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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qds/channels.hpp"
#include "qds/linear_map.hpp"

namespace qds {

enum class NormMethod { kExactP2, kAscent, kInterpolation };
const char* norm_method_name(NormMethod m);

struct InducedNormResult {
  double p = 2.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  ComplexMatrix witness;  // unit p-norm input attaining lower_bound
  NormMethod method = NormMethod::kExactP2;
};

// Random-restart projected ascent on ||Phi(x)||_p over ||x||_p = 1. Each
// restart draws from its own child stream of the seed.
struct AscentOptions {
  int restarts = 32;
  int iterations = 200;
  double step = 0.1;
  int max_halvings = 12;
  // Remaining restarts are skipped once the lower bound reaches this value
  // (induced_norm sets it to the known upper bound: the gap is closed).
  double target = std::numeric_limits<double>::infinity();
};

// p = 2 is exact (top singular value of the superoperator). Other p: ascent
// lower bound; upper bound 1 for certified QDS maps, otherwise the exact
// endpoint norms of CP maps (or a Kraus-type bound) combined by Riesz-Thorin.
InducedNormResult induced_norm(const Channel& channel, double p, const Tolerances& tol,
                               std::uint64_t seed, const AscentOptions& opts = {});

// Restriction to {x : tr x = 0}. Throws kNotTracePreserving when the
// channel fails trace preservation.
InducedNormResult traceless_norm(const Channel& channel, double p, const Tolerances& tol,
                                 std::uint64_t seed, const AscentOptions& opts = {});

// Upper bound on the p->p norm that needs no optimization.
double induced_norm_upper_bound(const Channel& channel, double p, const Tolerances& tol);

// Lower bound by ascent over an input subspace (nullptr for all of M_n).
struct AscentResult {
  double value = 0.0;
  ComplexMatrix witness;
};
AscentResult ascent_lower_bound(const MatrixMap& map, double p, const InputSubspace* subspace,
                                std::span<const ComplexMatrix> seeds, std::uint64_t seed,
                                const AscentOptions& opts = {});

struct SweepReport {
  std::vector<InducedNormResult> results;
  std::vector<std::string> violations;
  bool ok = true;
};

// Requires a certified QDS channel (kNotQds otherwise). Flags any grid point
// with lower bound above 1 + norm_violation_tol or upper bound other than 1.
SweepReport interpolation_sweep(const Channel& channel, std::span<const double> p_grid,
                                const Tolerances& tol, std::uint64_t seed,
                                const AscentOptions& opts = {});

// Diagnostic only: for diagonal projections e in the standard basis, the
// largest delta in [0, 1] with Phi(e) <= (1 - delta) e + delta (1 - e).
struct ProjectionHit {
  std::vector<int> mask;  // diagonal of e
  double delta = 0.0;
};
struct DiagonalProbeReport {
  double p = 2.0;
  std::size_t scanned = 0;
  bool exhaustive = true;
  std::vector<ProjectionHit> hits;  // projections admitting delta > 1e-8
  double best_delta = 0.0;
};
DiagonalProbeReport diagonal_contraction_probe(const Channel& channel, double p,
                                               const Tolerances& tol, std::uint64_t seed,
                                               std::size_t max_samples = 4096);

}  // namespace qds
