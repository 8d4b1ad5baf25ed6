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

#include "qds/channels.hpp"
#include "qds/matcore.hpp"

namespace qds {

// S(rho) = -sum_i lambda_i log lambda_i in nats, with 0 log 0 = 0.
// Eigenvalues in [-psd_tol, 0) are clamped to zero.
double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol = {});
double entropy_of_spectrum(const RealVector& eigenvalues);

struct EntropyReport {
  double s_in = 0.0;
  double s_out = 0.0;
  double delta = 0.0;
  // Strict increase predicted for a non-unitary QDS map and a non-pure input.
  bool strict_expected = false;
  // delta > strict_floor; differs from strict_expected on counterexamples,
  // e.g. a fixed point of the channel.
  bool strict_observed = false;
  bool monotone = true;  // delta >= -mono_tol
  double bound_log_d = 0.0;
};

// Requires a certified QDS channel (kNotQds otherwise).
EntropyReport entropy_monotonicity_check(const Channel& channel, const DensityMatrix& rho,
                                         const Tolerances& tol = {});

// True iff the channel is a unitary conjugation: all superoperator singular
// values equal 1 within unitary_tol and the Choi matrix has rank 1.
// Requires a certified QDS channel.
bool unitarity_probe(const Channel& channel, const Tolerances& tol = {});

}  // namespace qds
