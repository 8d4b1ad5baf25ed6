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

#include "qds/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qds/random.hpp"

namespace qds {

const char* norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::kExactP2: return "exact_p2";
    case NormMethod::kAscent: return "ascent";
    case NormMethod::kInterpolation: return "interpolation";
  }
  return "ascent";
}

namespace {

void require_exponent(double p) {
  if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::kBadExponent, "induced norm needs p in [1, inf]");
}

ComplexMatrix identity(std::size_t n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix project(const InputSubspace* sub, const ComplexMatrix& x) { return sub ? sub->project(x) : x; }

// Ascent from a single start. Returns the value at the final iterate, which
// is always a unit p-norm point of the subspace.
AscentResult ascend(const MatrixMap& map, double p, const InputSubspace* sub, const ComplexMatrix& start,
                    const AscentOptions& opts) {
  ComplexMatrix x = project(sub, start);
  const double xn = schatten_norm(x, p);
  if (!(xn > 0.0)) return {0.0, x};
  x /= xn;
  ComplexMatrix y = map.forward(x);
  double f = schatten_norm(y, p);
  for (int it = 0; it < opts.iterations; ++it) {
    const ComplexMatrix g = project(sub, map.adjoint(schatten_dual_element(y, p)));
    const double gn = g.norm();
    if (!(gn > 0.0)) break;
    const ComplexMatrix d = g * (x.norm() / gn);
    double eta = opts.step;
    bool improved = false;
    for (int h = 0; h <= opts.max_halvings; ++h, eta *= 0.5) {
      ComplexMatrix xc = project(sub, x + eta * d);
      const double cn = schatten_norm(xc, p);
      if (!(cn > 0.0)) continue;
      xc /= cn;
      ComplexMatrix yc = map.forward(xc);
      const double fc = schatten_norm(yc, p);
      if (fc > f + 1e-14 * std::max(1.0, f)) {
        x = std::move(xc);
        y = std::move(yc);
        f = fc;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {f, x};
}

ComplexMatrix random_start(std::size_t n, double p, Rng& rng) {
  if (std::isinf(p)) return random_unitary(n, rng);
  if (p == 1.0) {
    const ComplexMatrix u = random_gaussian(n, 1, rng);
    const ComplexMatrix v = random_gaussian(n, 1, rng);
    return u * v.adjoint();
  }
  return random_gaussian(n, n, rng);
}

std::vector<ComplexMatrix> diagonal_sign_seeds(std::size_t n, std::size_t offset, Rng& rng) {
  // x = 2e - 1 for diagonal projections e on coordinates >= offset.
  std::vector<ComplexMatrix> out;
  const std::size_t m = n - offset;
  auto make = [&](std::uint64_t mask) {
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < m; ++k) x(offset + k, offset + k) = ((mask >> k) & 1U) ? 1.0 : -1.0;
    out.push_back(std::move(x));
  };
  if (m <= 10) {
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) make(mask);
  } else {
    make(~0ULL);
    for (int s = 0; s < 255; ++s) {
      std::uint64_t mask = 0;
      for (std::size_t k = 0; k < std::min<std::size_t>(m, 64); ++k) mask |= (rng.uniform() < 0.5 ? 1ULL : 0ULL) << k;
      make(mask);
    }
  }
  return out;
}

std::vector<ComplexMatrix> structured_seeds(std::size_t n, double p, std::size_t offset, Rng& rng) {
  std::vector<ComplexMatrix> seeds;
  ComplexMatrix corner_id = ComplexMatrix::Zero(n, n);
  for (std::size_t k = offset; k < n; ++k) corner_id(k, k) = 1.0;
  seeds.push_back(corner_id);
  for (std::size_t k = offset; k < std::min(n, offset + 16); ++k) seeds.push_back(matrix_unit(n, k, k));
  if (n - offset <= 6) {
    for (std::size_t i = offset; i < n; ++i)
      for (std::size_t j = offset; j < n; ++j)
        if (i != j) seeds.push_back(matrix_unit(n, i, j));
  }
  if (std::isinf(p)) {
    for (auto& s : diagonal_sign_seeds(n, offset, rng)) seeds.push_back(std::move(s));
  }
  if (p == 1.0) {
    for (int s = 0; s < 8; ++s) {
      ComplexMatrix v = ComplexMatrix::Zero(n, 1);
      v.bottomRows(n - offset) = random_gaussian(n - offset, 1, rng);
      seeds.push_back(v * v.adjoint());
    }
  }
  return seeds;
}

double kraus_type_bound(const Channel& ch) {
  // Phi(x) = sum_m s_m A_m x B_m^* from the SVD of the Choi matrix, so
  // ||Phi||_{p->p} <= sum_m s_m ||A_m||_inf ||B_m||_inf for every p.
  if (const auto* k = ch.kraus()) {
    double acc = 0.0;
    for (const auto& op : k->operators) acc += std::pow(operator_norm(op), 2);
    return acc;
  }
  const ChoiMatrix c = to_choi(ch);
  const Svd d = svd(c.matrix);
  double acc = 0.0;
  for (Eigen::Index m = 0; m < d.singular_values.size(); ++m) {
    const double s = d.singular_values(m);
    if (s <= 1e-15 * d.singular_values(0)) break;
    acc += s * operator_norm(unvec(d.u.col(m), ch.dim())) * operator_norm(unvec(d.v.col(m), ch.dim()));
  }
  return acc;
}

double riesz_thorin(double one, double inf, double p) {
  if (p == 1.0) return one;
  if (std::isinf(p)) return inf;
  if (one == 0.0 || inf == 0.0) return 0.0;
  return std::pow(one, 1.0 / p) * std::pow(inf, 1.0 - 1.0 / p);
}

}  // namespace

double induced_norm_upper_bound(const Channel& channel, double p, const Tolerances& tol) {
  require_exponent(p);
  const QdsReport cert = certify_qds(channel, tol);
  if (cert.is_qds) return 1.0;
  if (p == 2.0) {
    return top_singular(channel_map(channel), full_space(channel.dim()), 0).value;
  }
  const std::size_t n = channel.dim();
  const double generic = kraus_type_bound(channel);
  double one = generic;
  double inf = generic;
  if (cert.choi_hermitian && cert.choi_min_eig >= -tol.psd_tol) {
    // Positive maps attain their L_inf norm at the identity (Russo-Dye); the
    // L_1 norm is the L_inf norm of the adjoint.
    one = std::min(one, operator_norm(channel.apply_hs_adjoint(identity(n))));
    inf = std::min(inf, operator_norm(channel.apply(identity(n))));
  }
  return std::min(generic, riesz_thorin(one, inf, p));
}

AscentResult ascent_lower_bound(const MatrixMap& map, double p, const InputSubspace* subspace,
                                std::span<const ComplexMatrix> seeds, std::uint64_t seed,
                                const AscentOptions& opts) {
  require_exponent(p);
  const std::size_t n = map.dim;
  AscentResult best{-1.0, ComplexMatrix::Zero(n, n)};
  auto consider = [&](AscentResult r) {
    if (r.value > best.value + 1e-14 * std::max(1.0, best.value)) best = std::move(r);
  };
  // Score every structured seed, then ascend from the two best.
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    ComplexMatrix x = project(subspace, seeds[i]);
    const double xn = schatten_norm(x, p);
    if (!(xn > 0.0)) continue;
    x /= xn;
    const double v = schatten_norm(map.forward(x), p);
    scored.emplace_back(v, i);
    consider({v, x});
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; k < std::min<std::size_t>(2, scored.size()); ++k) {
    if (best.value >= opts.target) break;
    consider(ascend(map, p, subspace, seeds[scored[k].second], opts));
  }
  const Rng root(seed);
  for (int r = 0; r < opts.restarts && best.value < opts.target; ++r) {
    Rng rng = root.child(static_cast<std::uint64_t>(r));
    consider(ascend(map, p, subspace, random_start(n, p, rng), opts));
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

InducedNormResult induced_norm(const Channel& channel, double p, const Tolerances& tol, std::uint64_t seed,
                               const AscentOptions& opts) {
  require_exponent(p);
  const std::size_t n = channel.dim();
  const MatrixMap map = channel_map(channel);
  InducedNormResult out;
  out.p = p;
  if (p == 2.0) {
    const TopSingular ts = top_singular(map, full_space(n), seed);
    out.lower_bound = out.upper_bound = ts.value;
    out.witness = ts.witness;
    out.method = NormMethod::kExactP2;
    return out;
  }
  Rng rng(Rng::mix(seed ^ 0x5eedULL));
  std::vector<ComplexMatrix> seeds = structured_seeds(n, p, 0, rng);
  if (p == 1.0) {
    // top eigenvector of Phi^*(1): the 1->1 maximizer whenever Phi is positive
    const ComplexMatrix a = channel.apply_hs_adjoint(identity(n));
    const Spectrum sp = eig_hermitian(HermitianMatrix(0.5 * (a + a.adjoint())));
    const ComplexMatrix v = sp.eigenvectors.col(0);
    seeds.push_back(v * v.adjoint());
  }
  out.upper_bound = induced_norm_upper_bound(channel, p, tol);
  AscentOptions run = opts;
  run.target = std::min(opts.target, out.upper_bound * (1.0 - 1e-13));
  AscentResult asc = ascent_lower_bound(map, p, nullptr, seeds, seed, run);
  out.lower_bound = asc.value;
  out.witness = std::move(asc.witness);
  out.method = (p == 1.0 || std::isinf(p)) ? NormMethod::kAscent : NormMethod::kInterpolation;
  return out;
}

InducedNormResult traceless_norm(const Channel& channel, double p, const Tolerances& tol, std::uint64_t seed,
                                 const AscentOptions& opts) {
  require_exponent(p);
  const std::size_t n = channel.dim();
  const QdsReport cert = certify_qds(channel, tol);
  if (cert.tp_residual > tol.tp_tol) {
    throw Error(ErrorCode::kNotTracePreserving,
                "traceless restriction needs a trace-preserving map (residual " +
                    std::to_string(cert.tp_residual) + ")");
  }
  InducedNormResult out;
  out.p = p;
  if (n == 1) {
    out.witness = ComplexMatrix::Zero(1, 1);
    return out;
  }
  const MatrixMap map = channel_map(channel);
  const InputSubspace sub = traceless_space(n);
  if (p == 2.0) {
    const TopSingular ts = top_singular(map, sub, seed);
    out.lower_bound = out.upper_bound = ts.value;
    out.witness = ts.witness;
    out.method = NormMethod::kExactP2;
    return out;
  }
  std::vector<ComplexMatrix> seeds;
  const std::vector<ComplexMatrix> gm = gell_mann_basis(n);
  for (std::size_t i = 0; i < std::min<std::size_t>(gm.size(), 64); ++i) seeds.push_back(gm[i]);
  Rng rng(Rng::mix(seed ^ 0x7ace1e55ULL));
  for (auto& s : structured_seeds(n, p, 0, rng)) seeds.push_back(std::move(s));
  AscentResult asc = ascent_lower_bound(map, p, &sub, seeds, seed, opts);
  out.lower_bound = asc.value;
  out.witness = std::move(asc.witness);
  out.upper_bound = induced_norm_upper_bound(channel, p, tol);
  out.method = (p == 1.0 || std::isinf(p)) ? NormMethod::kAscent : NormMethod::kInterpolation;
  return out;
}

SweepReport interpolation_sweep(const Channel& channel, std::span<const double> p_grid, const Tolerances& tol,
                                std::uint64_t seed, const AscentOptions& opts) {
  const QdsReport cert = certify_qds(channel, tol);
  if (!cert.is_qds) throw Error(ErrorCode::kNotQds, "interpolation sweep needs a certified QDS channel");
  SweepReport report;
  const Rng root(seed);
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    const double p = p_grid[i];
    InducedNormResult r = induced_norm(channel, p, tol, root.child(i).engine()(), opts);
    if (r.lower_bound > 1.0 + tol.norm_violation_tol) {
      report.violations.push_back("p=" + std::to_string(p) + ": lower bound " + std::to_string(r.lower_bound) +
                                  " exceeds 1");
    }
    if (std::abs(r.upper_bound - 1.0) > 1e-8) {
      report.violations.push_back("p=" + std::to_string(p) + ": upper bound " + std::to_string(r.upper_bound) +
                                  " differs from 1");
    }
    report.results.push_back(std::move(r));
  }
  report.ok = report.violations.empty();
  return report;
}

namespace {

double min_eig(const ComplexMatrix& a) {
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

// Largest feasible delta in [0, 1] for A + delta B >= 0, or -1 if none.
// g(delta) = lambda_min(A + delta B) is concave.
double largest_feasible_delta(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  auto g = [&](double d) { return min_eig(a + d * b); };
  double lo = 0.0, hi = 1.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 80; ++it) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + phi * (hi - lo);
      g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - phi * (hi - lo);
      g1 = g(x1);
    }
  }
  double best = 0.5 * (lo + hi);
  double gbest = g(best);
  for (double edge : {0.0, 1.0}) {
    const double ge = g(edge);
    if (ge > gbest) {
      best = edge;
      gbest = ge;
    }
  }
  if (gbest < -tol) return -1.0;
  if (g(1.0) >= -tol) return 1.0;
  double left = best, right = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (left + right);
    if (g(mid) >= -tol) left = mid; else right = mid;
  }
  return left;
}

}  // namespace

DiagonalProbeReport diagonal_contraction_probe(const Channel& channel, double p, const Tolerances& tol,
                                               std::uint64_t seed, std::size_t max_samples) {
  require_exponent(p);
  const std::size_t n = channel.dim();
  DiagonalProbeReport report;
  report.p = p;
  if (n < 2) return report;
  const ComplexMatrix one = identity(n);
  auto probe = [&](const std::vector<int>& mask) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < n; ++k) e(k, k) = mask[k];
    const ComplexMatrix a = e - channel.apply(e);
    const ComplexMatrix b = one - 2.0 * e;
    const double d = largest_feasible_delta(a, b, tol.psd_tol);
    ++report.scanned;
    if (d > 1e-8) {
      report.hits.push_back({mask, d});
      report.best_delta = std::max(report.best_delta, d);
    }
  };
  std::vector<int> mask(n);
  if (n <= 12) {
    for (std::uint64_t m = 1; m + 1 < (1ULL << n); ++m) {
      for (std::size_t k = 0; k < n; ++k) mask[k] = static_cast<int>((m >> k) & 1U);
      probe(mask);
    }
  } else {
    report.exhaustive = false;
    Rng rng(seed);
    for (std::size_t s = 0; s < max_samples; ++s) {
      int ones = 0;
      for (std::size_t k = 0; k < n; ++k) ones += mask[k] = rng.uniform() < 0.5 ? 1 : 0;
      if (ones == 0 || ones == static_cast<int>(n)) mask[rng.index(n)] ^= 1;
      probe(mask);
    }
  }
  return report;
}

}  // namespace qds
