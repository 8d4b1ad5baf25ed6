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

#include "qds/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "qds/linear_map.hpp"
#include "qds/random.hpp"

namespace qds {

DeviationMetrics deviation_metrics(const Channel& psi) {
  const std::size_t n = psi.dim();
  const ComplexMatrix one = ComplexMatrix::Identity(n, n);
  DeviationMetrics m;
  ComplexMatrix a(n, n);
  if (psi.kraus()) {
    a = psi.apply_hs_adjoint(one) - one;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(j, i) = trace(psi.apply(matrix_unit(n, i, j))) - (i == j ? 1.0 : 0.0);
  }
  m.delta_tr = operator_norm(a);
  m.delta_un = operator_norm(psi.apply(one) - one);
  return m;
}

double sampled_delta_tr(const Channel& psi, std::size_t samples, Rng& rng) {
  const std::size_t n = psi.dim();
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    ComplexMatrix u = random_gaussian(n, 1, rng);
    ComplexMatrix v = random_gaussian(n, 1, rng);
    u /= u.norm();
    v /= v.norm();
    const ComplexMatrix x = u * v.adjoint();
    best = std::max(best, std::abs(trace(psi.apply(x) - x)));
  }
  return best;
}

double distance_p2(const Channel& a, const Channel& b, std::uint64_t seed) {
  return top_singular(difference_map(a, b), full_space(a.dim()), seed).value;
}

Channel additive_perturbation(const Channel& phi, double eps, const ComplexMatrix& a) {
  const std::size_t n = phi.dim();
  if (static_cast<std::size_t>(a.rows()) != n || a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "perturbation direction must match the channel dimension");
  }
  if (!std::isfinite(eps)) throw Error(ErrorCode::kBadParameter, "eps must be finite");
  ComplexMatrix s = to_superop(phi).matrix;
  s.noalias() += eps * vec(a) * vec(ComplexMatrix::Identity(n, n)).transpose();
  return Channel(SuperopMatrix{n, std::move(s)}, {"additive_perturbation", {{"eps", eps}}});
}

Channel mixture_perturbation(const Channel& phi, double t, const ComplexMatrix& u) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::kBadParameter, "mixture weight t must lie in [0,1]");
  const std::size_t n = phi.dim();
  const ComplexMatrix su = to_superop(unitary_conjugation(u)).matrix;
  ComplexMatrix s = t * to_superop(phi).matrix + (1.0 - t) * su;
  return Channel(SuperopMatrix{n, std::move(s)}, {"mixture_perturbation", {{"t", t}}});
}

PerturbationFamily parse_family(const std::string& name) {
  if (name == "additive") return PerturbationFamily::kAdditive;
  if (name == "mixture") return PerturbationFamily::kMixture;
  throw Error(ErrorCode::kBadParameter, "unknown perturbation family '" + name + "'");
}

const char* family_name(PerturbationFamily f) {
  return f == PerturbationFamily::kAdditive ? "additive" : "mixture";
}

PerturbationSweep perturbation_sweep(const Channel& phi, PerturbationFamily family, std::span<const double> eps_grid,
                                     double p, const Tolerances& tol, std::uint64_t seed,
                                     const PerturbationOptions& opts) {
  if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::kBadExponent, "perturbation sweep needs p >= 1");
  if (!certify_qds(phi, tol).is_qds) throw Error(ErrorCode::kNotQds, "phi must be a certified QDS channel");
  const std::size_t n = phi.dim();
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  a(0, 0) = 1.0;
  if (opts.direction) a = *opts.direction;
  Rng rng(seed);
  const ComplexMatrix u = opts.unitary ? *opts.unitary : random_unitary(n, rng);

  PerturbationSweep sweep;
  sweep.p = p;
  sweep.family = family;
  sweep.exact = p == 2.0;
  const double q = conjugate_exponent(p);
  const double alpha = std::min(1.0 / p, std::isinf(q) ? 0.0 : 1.0 / q);
  const Rng root(seed);
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    const double eps = eps_grid[i];
    if (!(eps >= 0.0)) throw Error(ErrorCode::kBadParameter, "eps values must be >= 0");
    const Channel psi = family == PerturbationFamily::kAdditive ? additive_perturbation(phi, eps, a)
                                                                : mixture_perturbation(phi, 1.0 - eps, u);
    PerturbationReport r;
    r.epsilon = eps;
    r.alpha = alpha;
    const DeviationMetrics m = deviation_metrics(psi);
    r.delta_tr = m.delta_tr;
    r.delta_un = m.delta_un;
    const std::uint64_t sub = root.child(i).engine()();
    if (sweep.exact) {
      r.distance = distance_p2(phi, psi, sub);
    } else {
      const MatrixMap diff = difference_map(psi, phi);
      r.distance = ascent_lower_bound(diff, p, nullptr, std::vector<ComplexMatrix>{ComplexMatrix::Identity(n, n)},
                                      sub, opts.ascent)
                       .value;
    }
    r.psi_norm = top_singular(channel_map(psi), full_space(n), sub).value;
    const double metric = r.delta_tr + r.delta_un;
    if (metric > 1e-12) {
      r.fitted_cp = r.distance / std::pow(metric, alpha);
    } else if (r.distance > 1e-12) {
      r.fitted_cp = kInfinity;
      sweep.bound_counterexamples.push_back(eps);
    } else {
      r.fitted_cp = 0.0;
    }
    sweep.points.push_back(r);
  }
  // Order by decreasing eps to test monotone decay of the distance.
  std::vector<const PerturbationReport*> order;
  for (const auto& pt : sweep.points) order.push_back(&pt);
  std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) { return x->epsilon > y->epsilon; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->epsilon < order[i - 1]->epsilon && order[i]->distance > order[i - 1]->distance + 1e-15) {
      sweep.distance_decreasing = false;
    }
  }
  bool first = true;
  for (const auto& pt : sweep.points) {
    if (!std::isfinite(pt.fitted_cp) || (pt.fitted_cp == 0.0 && pt.distance == 0.0)) continue;
    sweep.cp_max = first ? pt.fitted_cp : std::max(sweep.cp_max, pt.fitted_cp);
    sweep.cp_min = first ? pt.fitted_cp : std::min(sweep.cp_min, pt.fitted_cp);
    first = false;
  }
  return sweep;
}

}  // namespace qds
