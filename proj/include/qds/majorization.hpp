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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qds/channels.hpp"
#include "qds/matcore.hpp"

namespace qds {

// Real square matrix with entries in [-ds_tol, 1 + ds_tol] and unit row and
// column sums within ds_tol.
class DoublyStochasticMatrix {
 public:
  DoublyStochasticMatrix(RealMatrix entries, const Tolerances& tol = {});

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const RealMatrix& entries() const { return m_; }

 private:
  RealMatrix m_;
};

// permutations[k][i] = column of the single 1 in row i of P_k.
struct BirkhoffDecomposition {
  std::vector<double> weights;
  std::vector<std::vector<std::size_t>> permutations;

  RealMatrix reconstruct(std::size_t dim) const;
};

struct MajorizationCertificate {
  bool holds = false;
  RealVector partial_sum_slack;  // slack_k = sum_{i<=k} lambda_i(sigma) - lambda_i(rho)
  RealVector lambda_rho;
  RealVector lambda_sigma;
  std::optional<DoublyStochasticMatrix> ds_matrix;
  std::optional<BirkhoffDecomposition> decomposition;
  std::optional<Channel> realizing_channel;
  ComplexMatrix sigma_basis;  // V with sigma = V diag(lambda_sigma) V^*
  ComplexMatrix rho_basis;    // W with rho = W diag(lambda_rho) W^*
  double realize_residual = 0.0;  // ||Phi(sigma) - rho||_1
  bool channel_qds = false;
  bool degenerate_basis = false;
};

// Partial-sum test on the sorted spectra.
MajorizationCertificate check_majorization(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           const Tolerances& tol = {});
bool vector_majorized(std::span<const double> lam_rho, std::span<const double> lam_sigma, double tol);

// D with D lam_sigma = lam_rho, built as a product of at most dim - 1
// T-transforms (1 - s) I + s Q_{jk}. Throws kNotMajorized.
DoublyStochasticMatrix build_ds_matrix(std::span<const double> lam_rho, std::span<const double> lam_sigma,
                                       const Tolerances& tol = {});

// Greedy Birkhoff-von Neumann decomposition via perfect matchings on the
// support graph (entries > ds_tol). Throws kDecompositionStalled.
BirkhoffDecomposition birkhoff_decompose(const DoublyStochasticMatrix& d, const Tolerances& tol = {});

// Mixed-unitary channel Phi = Ad_W o (sum_k w_k Ad_{P_k}) o Ad_{V^*} with
// Phi(sigma) = rho. Throws kNotMajorized.
MajorizationCertificate realize_channel(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const Tolerances& tol = {});

// Surrogate for "every convex f": hinge functions t -> max(t - s, 0) and
// powers t -> t^q. On spectra the hinge family already characterizes
// majorization, so a violated hinge is a certificate of non-majorization.
struct ConvexTestEntry {
  std::string family;  // "hinge" or "power"
  double parameter = 0.0;
  double trace_rho = 0.0;
  double trace_sigma = 0.0;
  bool violated = false;
};
struct ConvexTestReport {
  std::vector<ConvexTestEntry> entries;
  std::size_t violations = 0;
};
ConvexTestReport convex_function_test(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      std::span<const double> hinge_grid, std::span<const double> power_grid,
                                      const Tolerances& tol = {});
// Default grid: hinge points at every eigenvalue of rho and sigma plus 0.05
// steps on [0, 1]; powers {1.5, 2, 3, 5}.
ConvexTestReport convex_function_test(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      const Tolerances& tol = {});

}  // namespace qds
