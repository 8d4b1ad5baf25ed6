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

#include "qds/entropy.hpp"

#include <cmath>

namespace qds {

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
  RealVector ev = eigenvalues_hermitian(rho.hermitian());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0.0 && ev(i) >= -tol.psd_tol) ev(i) = 0.0;
  }
  return std::max(entropy_of_spectrum(ev), 0.0);
}

bool unitarity_probe(const Channel& channel, const Tolerances& tol) {
  const QdsReport cert = certify_qds(channel, tol);
  if (!cert.is_qds) throw Error(ErrorCode::kNotQds, "unitarity probe needs a certified QDS channel");
  if (choi_rank(channel, tol.psd_tol) != 1) return false;
  const std::size_t n = channel.dim();
  if (n <= 16) {
    const RealVector s = singular_values(to_superop(channel).matrix);
    return (s.array() - 1.0).abs().maxCoeff() <= tol.unitary_tol;
  }
  // A rank-one trace-preserving map is K x K^* with K^*K = 1.
  const KrausSet k = to_kraus(channel, tol);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& op : k.operators) {
    if (op.norm() > tol.psd_tol) sum = op;
  }
  const ComplexMatrix one = ComplexMatrix::Identity(n, n);
  return operator_norm(sum.adjoint() * sum - one) <= tol.unitary_tol &&
         operator_norm(sum * sum.adjoint() - one) <= tol.unitary_tol;
}

EntropyReport entropy_monotonicity_check(const Channel& channel, const DensityMatrix& rho, const Tolerances& tol) {
  if (rho.dim() != channel.dim()) throw Error(ErrorCode::kDimensionMismatch, "rho dimension differs from channel");
  const QdsReport cert = certify_qds(channel, tol);
  if (!cert.is_qds) throw Error(ErrorCode::kNotQds, "entropy check needs a certified QDS channel");
  EntropyReport r;
  r.s_in = von_neumann_entropy(rho, tol);
  // The output of a QDS map is a density matrix up to roundoff.
  Tolerances relaxed = tol;
  relaxed.hermitian_tol = std::max(tol.hermitian_tol, 1e-9);
  relaxed.psd_tol = std::max(tol.psd_tol, 1e-9);
  relaxed.trace_tol = std::max(tol.trace_tol, 1e-9);
  const DensityMatrix out(channel.apply(rho.matrix()), relaxed);
  r.s_out = von_neumann_entropy(out, relaxed);
  r.delta = r.s_out - r.s_in;
  r.bound_log_d = std::log(static_cast<double>(channel.dim()));
  const RealVector ev = eigenvalues_hermitian(rho.hermitian());
  const bool pure = ev(0) >= 1.0 - tol.psd_tol;
  r.strict_expected = !unitarity_probe(channel, tol) && !pure;
  r.strict_observed = r.delta > tol.strict_floor;
  r.monotone = r.delta >= -tol.mono_tol;
  return r;
}

}  // namespace qds
