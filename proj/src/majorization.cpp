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

#include "qds/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qds {

DoublyStochasticMatrix::DoublyStochasticMatrix(RealMatrix entries, const Tolerances& tol) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw Error(ErrorCode::kBadParameter, "doubly stochastic matrix must be square with dim >= 1");
  }
  if (!m_.allFinite()) throw Error(ErrorCode::kBadParameter, "doubly stochastic matrix has non-finite entries");
  if (m_.minCoeff() < -tol.ds_tol || m_.maxCoeff() > 1.0 + tol.ds_tol) {
    throw Error(ErrorCode::kBadParameter, "doubly stochastic entries must lie in [0, 1]");
  }
  const double row_dev = (m_.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double col_dev = (m_.colwise().sum().array() - 1.0).abs().maxCoeff();
  if (row_dev > tol.ds_tol || col_dev > tol.ds_tol) {
    throw Error(ErrorCode::kBadParameter, "row/column sums differ from 1 by " +
                                              std::to_string(std::max(row_dev, col_dev)));
  }
}

RealMatrix BirkhoffDecomposition::reconstruct(std::size_t dim) const {
  RealMatrix d = RealMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < weights.size(); ++k)
    for (std::size_t i = 0; i < dim; ++i) d(i, permutations[k][i]) += weights[k];
  return d;
}

namespace {

RealVector partial_slack(std::span<const double> lam_rho, std::span<const double> lam_sigma) {
  RealVector slack(lam_rho.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < lam_rho.size(); ++k) {
    acc += lam_sigma[k] - lam_rho[k];
    slack(k) = acc;
  }
  return slack;
}

std::span<const double> as_span(const RealVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

void require_sorted_simplex(std::span<const double> v, const Tolerances& tol, const char* what) {
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw Error(ErrorCode::kBadParameter, std::string(what) + " has non-finite entries");
    if (i > 0 && v[i] > v[i - 1] + tol.maj_tol) {
      throw Error(ErrorCode::kBadParameter, std::string(what) + " must be sorted non-increasing");
    }
    total += v[i];
  }
  if (std::abs(total - 1.0) > tol.maj_tol) throw Error(ErrorCode::kBadParameter, std::string(what) + " must sum to 1");
}

}  // namespace

bool vector_majorized(std::span<const double> lam_rho, std::span<const double> lam_sigma, double tol) {
  if (lam_rho.size() != lam_sigma.size()) return false;
  const RealVector slack = partial_slack(lam_rho, lam_sigma);
  if (slack.size() == 0) return true;
  return slack.minCoeff() >= -tol && std::abs(slack(slack.size() - 1)) <= tol;
}

MajorizationCertificate check_majorization(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::kDimensionMismatch, "rho and sigma differ in dimension");
  MajorizationCertificate cert;
  cert.lambda_rho = eigenvalues_hermitian(rho.hermitian());
  cert.lambda_sigma = eigenvalues_hermitian(sigma.hermitian());
  cert.partial_sum_slack = partial_slack(as_span(cert.lambda_rho), as_span(cert.lambda_sigma));
  cert.holds = vector_majorized(as_span(cert.lambda_rho), as_span(cert.lambda_sigma), tol.maj_tol);
  return cert;
}

DoublyStochasticMatrix build_ds_matrix(std::span<const double> lam_rho, std::span<const double> lam_sigma,
                                       const Tolerances& tol) {
  if (lam_rho.size() != lam_sigma.size() || lam_rho.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "spectra must be non-empty and of equal length");
  }
  require_sorted_simplex(lam_rho, tol, "lam_rho");
  require_sorted_simplex(lam_sigma, tol, "lam_sigma");
  if (!vector_majorized(lam_rho, lam_sigma, tol.maj_tol)) {
    throw Error(ErrorCode::kNotMajorized, "lam_rho is not majorized by lam_sigma");
  }
  const std::size_t n = lam_rho.size();
  const Eigen::Map<const RealVector> target(lam_rho.data(), static_cast<Eigen::Index>(n));
  RealVector cur = Eigen::Map<const RealVector>(lam_sigma.data(), static_cast<Eigen::Index>(n));
  const double eps = 1e-15;
  // uniform target: full mixing works for every sigma
  if (target.maxCoeff() - target.minCoeff() <= eps) {
    return DoublyStochasticMatrix(RealMatrix::Constant(n, n, 1.0 / static_cast<double>(n)), tol);
  }
  RealMatrix d = RealMatrix::Identity(n, n);
  // Each T-transform moves mass from the last coordinate j still above its
  // target to the first later coordinate k below target, matching one of
  // them exactly; majorization of the target is preserved at every step.
  for (std::size_t step = 0; step < 2 * n; ++step) {
    std::ptrdiff_t j = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (cur(i) - target(i) > eps) j = static_cast<std::ptrdiff_t>(i);
    if (j < 0) break;
    std::ptrdiff_t k = -1;
    for (std::size_t i = static_cast<std::size_t>(j) + 1; i < n; ++i) {
      if (cur(i) - target(i) < -eps) {
        k = static_cast<std::ptrdiff_t>(i);
        break;
      }
    }
    if (k < 0) break;
    const bool match_j = cur(j) - target(j) <= target(k) - cur(k);
    const double delta = match_j ? cur(j) - target(j) : target(k) - cur(k);
    const double gap = cur(j) - cur(k);
    if (!(gap > 0.0)) break;
    const double s = std::clamp(delta / gap, 0.0, 1.0);
    RealMatrix t = RealMatrix::Identity(n, n);
    t(j, j) = t(k, k) = 1.0 - s;
    t(j, k) = t(k, j) = s;
    d = t * d;
    cur = t * cur;
    if (match_j) cur(j) = target(j); else cur(k) = target(k);
  }
  const double residual = (d * Eigen::Map<const RealVector>(lam_sigma.data(), static_cast<Eigen::Index>(n)) - target)
                              .cwiseAbs()
                              .maxCoeff();
  if (residual > tol.ds_tol) {
    throw Error(ErrorCode::kNotMajorized, "T-transform chain left residual " + std::to_string(residual));
  }
  return DoublyStochasticMatrix(std::move(d), tol);
}

namespace {

// Kuhn's augmenting-path matching on the bipartite support graph.
bool augment(std::size_t row, const std::vector<std::vector<std::size_t>>& adj, std::vector<int>& col_match,
             std::vector<char>& seen) {
  for (std::size_t c : adj[row]) {
    if (seen[c]) continue;
    seen[c] = 1;
    if (col_match[c] < 0 || augment(static_cast<std::size_t>(col_match[c]), adj, col_match, seen)) {
      col_match[c] = static_cast<int>(row);
      return true;
    }
  }
  return false;
}

std::optional<std::vector<std::size_t>> perfect_matching(const RealMatrix& r, double zero_tol) {
  const auto n = static_cast<std::size_t>(r.rows());
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r(i, j) > zero_tol) adj[i].push_back(j);
  std::vector<int> col_match(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> seen(n, 0);
    if (!augment(i, adj, col_match, seen)) return std::nullopt;
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t c = 0; c < n; ++c) perm[static_cast<std::size_t>(col_match[c])] = c;
  return perm;
}

}  // namespace

BirkhoffDecomposition birkhoff_decompose(const DoublyStochasticMatrix& d, const Tolerances& tol) {
  const std::size_t n = d.dim();
  RealMatrix r = d.entries();
  r = r.cwiseMax(0.0);
  BirkhoffDecomposition out;
  const std::size_t max_terms = n * n + 1;
  for (std::size_t step = 0; step < max_terms; ++step) {
    const double mass = r.sum() / static_cast<double>(n);
    if (mass <= tol.ds_tol || r.maxCoeff() <= tol.ds_tol) break;
    const auto perm = perfect_matching(r, tol.ds_tol);
    if (!perm) {
      throw Error(ErrorCode::kDecompositionStalled,
                  "no perfect matching on the support while residual mass is " + std::to_string(mass));
    }
    double w = kInfinity;
    for (std::size_t i = 0; i < n; ++i) w = std::min(w, r(i, (*perm)[i]));
    for (std::size_t i = 0; i < n; ++i) {
      double& e = r(i, (*perm)[i]);
      e -= w;
      if (e <= tol.ds_tol * 1e-3) e = 0.0;
    }
    out.weights.push_back(w);
    out.permutations.push_back(*perm);
  }
  const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  if (total > 0.0) {
    for (double& w : out.weights) w /= total;
  }
  return out;
}

MajorizationCertificate realize_channel(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
  MajorizationCertificate cert = check_majorization(rho, sigma, tol);
  if (!cert.holds) throw Error(ErrorCode::kNotMajorized, "rho is not majorized by sigma");
  const std::size_t n = rho.dim();
  const Spectrum ss = eig_hermitian(sigma.hermitian());
  const Spectrum sr = eig_hermitian(rho.hermitian());
  cert.lambda_sigma = ss.eigenvalues;
  cert.lambda_rho = sr.eigenvalues;
  cert.sigma_basis = ss.eigenvectors;
  cert.rho_basis = sr.eigenvectors;
  for (std::size_t i = 1; i < n; ++i) {
    if (ss.eigenvalues(i - 1) - ss.eigenvalues(i) < 1e-8 || sr.eigenvalues(i - 1) - sr.eigenvalues(i) < 1e-8) {
      cert.degenerate_basis = true;
    }
  }
  // Clamp PSD slack and renormalize so that the spectra are exact simplex points.
  RealVector ls = ss.eigenvalues.cwiseMax(0.0);
  RealVector lr = sr.eigenvalues.cwiseMax(0.0);
  ls /= ls.sum();
  lr /= lr.sum();
  cert.ds_matrix = build_ds_matrix(as_span(lr), as_span(ls), tol);
  cert.decomposition = birkhoff_decompose(*cert.ds_matrix, tol);

  KrausSet k{n, {}};
  const BirkhoffDecomposition& b = *cert.decomposition;
  for (std::size_t t = 0; t < b.weights.size(); ++t) {
    k.operators.push_back(std::sqrt(b.weights[t]) * sr.eigenvectors * permutation_unitary(b.permutations[t]) *
                          ss.eigenvectors.adjoint());
  }
  cert.realizing_channel = Channel(std::move(k), {"majorization_realizer", nlohmann::json::object()});
  cert.realize_residual = schatten_norm(cert.realizing_channel->apply(sigma.matrix()) - rho.matrix(), 1.0);
  cert.channel_qds = certify_qds(*cert.realizing_channel, tol).is_qds;
  return cert;
}

ConvexTestReport convex_function_test(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      std::span<const double> hinge_grid, std::span<const double> power_grid,
                                      const Tolerances& tol) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::kDimensionMismatch, "rho and sigma differ in dimension");
  ConvexTestReport report;
  auto run = [&](const char* family, double param, const RealFunction& f) {
    ConvexTestEntry e;
    e.family = family;
    e.parameter = param;
    e.trace_rho = trace(spectral_apply(rho.hermitian(), f).matrix()).real();
    e.trace_sigma = trace(spectral_apply(sigma.hermitian(), f).matrix()).real();
    e.violated = e.trace_rho > e.trace_sigma + tol.maj_tol;
    report.violations += e.violated ? 1 : 0;
    report.entries.push_back(std::move(e));
  };
  for (double s : hinge_grid) {
    run("hinge", s, RealFunction{[s](double t) { return std::max(t - s, 0.0); }, 0.0, kInfinity, tol.psd_tol});
  }
  for (double q : power_grid) {
    if (std::isnan(q) || q < 1.0) throw Error(ErrorCode::kBadExponent, "power family needs exponents >= 1");
    run("power", q, RealFunction{[q](double t) { return std::pow(t, q); }, 0.0, kInfinity, tol.psd_tol});
  }
  return report;
}

ConvexTestReport convex_function_test(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
  std::vector<double> hinges;
  for (int i = 0; i <= 20; ++i) hinges.push_back(0.05 * i);
  const RealVector lr = eigenvalues_hermitian(rho.hermitian());
  const RealVector ls = eigenvalues_hermitian(sigma.hermitian());
  for (Eigen::Index i = 0; i < lr.size(); ++i) hinges.push_back(std::max(lr(i), 0.0));
  for (Eigen::Index i = 0; i < ls.size(); ++i) hinges.push_back(std::max(ls(i), 0.0));
  std::sort(hinges.begin(), hinges.end());
  hinges.erase(std::unique(hinges.begin(), hinges.end()), hinges.end());
  const std::vector<double> powers{1.5, 2.0, 3.0, 5.0};
  return convex_function_test(rho, sigma, hinges, powers, tol);
}

}  // namespace qds
