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

#include "qds/linear_map.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qds/random.hpp"

namespace qds {

MatrixMap channel_map(const Channel& channel) {
  return MatrixMap{channel.dim(), [channel](const ComplexMatrix& x) { return channel.apply(x); },
                   [channel](const ComplexMatrix& y) { return channel.apply_hs_adjoint(y); },
                   [channel](std::size_t i, std::size_t j) { return channel.apply_unit(i, j); }};
}

MatrixMap difference_map(const Channel& a, const Channel& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "difference of channels with different dims");
  return MatrixMap{a.dim(), [a, b](const ComplexMatrix& x) -> ComplexMatrix { return a.apply(x) - b.apply(x); },
                   [a, b](const ComplexMatrix& y) -> ComplexMatrix {
                     return a.apply_hs_adjoint(y) - b.apply_hs_adjoint(y);
                   },
                   [a, b](std::size_t i, std::size_t j) -> ComplexMatrix {
                     return a.apply_unit(i, j) - b.apply_unit(i, j);
                   }};
}

InputSubspace full_space(std::size_t n) {
  InputSubspace s;
  s.dim = n;
  s.size = n * n;
  s.basis = [n] {
    std::vector<ComplexMatrix> b;
    b.reserve(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) b.push_back(matrix_unit(n, i, j));
    return b;
  };
  s.project = [](const ComplexMatrix& x) { return x; };
  s.units = [n] {
    std::vector<std::pair<std::size_t, std::size_t>> u;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) u.emplace_back(i, j);
    return u;
  };
  return s;
}

std::vector<ComplexMatrix> gell_mann_basis(std::size_t n) {
  std::vector<ComplexMatrix> b;
  b.reserve(n * n - 1);
  const double r2 = std::sqrt(2.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(j, k) = s(k, j) = 1.0 / r2;
      b.push_back(std::move(s));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(j, k) = Complex(0.0, -1.0 / r2);
      a(k, j) = Complex(0.0, 1.0 / r2);
      b.push_back(std::move(a));
    }
  }
  for (std::size_t l = 1; l < n; ++l) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    const double c = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) d(j, j) = c;
    d(l, l) = -static_cast<double>(l) * c;
    b.push_back(std::move(d));
  }
  return b;
}

InputSubspace traceless_space(std::size_t n) {
  InputSubspace s;
  s.dim = n;
  s.size = n * n - 1;
  s.basis = [n] { return gell_mann_basis(n); };
  s.project = [n](const ComplexMatrix& x) -> ComplexMatrix {
    return x - (trace(x) / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  };
  return s;
}

InputSubspace corner_space(std::size_t n, std::size_t rank) {
  InputSubspace s;
  s.dim = n;
  s.size = (n - rank) * (n - rank);
  s.basis = [n, rank] {
    std::vector<ComplexMatrix> b;
    for (std::size_t j = rank; j < n; ++j)
      for (std::size_t i = rank; i < n; ++i) b.push_back(matrix_unit(n, i, j));
    return b;
  };
  s.project = [n, rank](const ComplexMatrix& x) -> ComplexMatrix {
    ComplexMatrix y = ComplexMatrix::Zero(n, n);
    const auto m = static_cast<Eigen::Index>(n - rank);
    y.bottomRightCorner(m, m) = x.bottomRightCorner(m, m);
    return y;
  };
  s.units = [n, rank] {
    std::vector<std::pair<std::size_t, std::size_t>> u;
    for (std::size_t j = rank; j < n; ++j)
      for (std::size_t i = rank; i < n; ++i) u.emplace_back(i, j);
    return u;
  };
  return s;
}

namespace {

TopSingular dense_top(const MatrixMap& map, const InputSubspace& sub) {
  const std::vector<ComplexMatrix> basis = sub.basis();
  const std::size_t n = map.dim;
  ComplexMatrix m(n * n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) m.col(j) = vec(map.forward(basis[j]));
  TopSingular out;
  out.dense = true;
  if (basis.empty()) {
    out.witness = ComplexMatrix::Zero(n, n);
    return out;
  }
  const Svd d = svd(m);
  out.value = d.singular_values(0);
  ComplexMatrix w = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < basis.size(); ++j) w += d.v(j, 0) * basis[j];
  out.witness = w / w.norm();
  return out;
}

// Exact path for sparse maps on a matrix-unit basis: the images of the
// basis split into independent blocks (connected components of the
// column/row incidence graph) and each block gets a dense SVD. Returns
// nullopt when the images are too dense or a block is too large.
std::optional<TopSingular> block_top(const MatrixMap& map, const InputSubspace& sub) {
  constexpr std::size_t kMaxBlock = 512;
  const std::size_t n = map.dim;
  const auto pairs = sub.units();
  const std::size_t cols = pairs.size();
  const std::size_t budget = 32 * cols + 64;
  std::vector<std::vector<std::pair<std::size_t, Complex>>> images(cols);
  std::size_t nnz = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    const ComplexMatrix y = map.unit ? map.unit(pairs[c].first, pairs[c].second)
                                     : map.forward(matrix_unit(n, pairs[c].first, pairs[c].second));
    for (Eigen::Index jj = 0; jj < y.cols(); ++jj)
      for (Eigen::Index ii = 0; ii < y.rows(); ++ii)
        if (y(ii, jj) != Complex(0.0)) images[c].emplace_back(static_cast<std::size_t>(ii + jj * y.rows()), y(ii, jj));
    nnz += images[c].size();
    if (nnz > budget) return std::nullopt;
  }
  // Union-find over columns [0, cols) and rows [cols, cols + n^2).
  std::vector<std::size_t> parent(cols + n * n);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [row, v] : images[c]) parent[find(cols + row)] = find(c);
  std::vector<std::vector<std::size_t>> groups(parent.size());
  for (std::size_t c = 0; c < cols; ++c) groups[find(c)].push_back(c);

  TopSingular best;
  best.dense = true;
  best.witness = ComplexMatrix::Zero(n, n);
  bool have = false;
  std::vector<Eigen::Index> row_slot(n * n, -1);
  for (const auto& g : groups) {
    if (g.empty()) continue;
    if (g.size() > kMaxBlock) return std::nullopt;
    std::vector<std::size_t> rows;
    for (std::size_t c : g)
      for (const auto& [row, v] : images[c])
        if (row_slot[row] < 0) {
          row_slot[row] = static_cast<Eigen::Index>(rows.size());
          rows.push_back(row);
        }
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(std::max<std::size_t>(rows.size(), 1)),
                                          static_cast<Eigen::Index>(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k)
      for (const auto& [row, v] : images[g[k]]) m(row_slot[row], static_cast<Eigen::Index>(k)) = v;
    for (std::size_t row : rows) row_slot[row] = -1;
    const Svd d = svd(m);
    if (!have || d.singular_values(0) > best.value) {
      have = true;
      best.value = d.singular_values(0);
      best.witness.setZero();
      for (std::size_t k = 0; k < g.size(); ++k) {
        best.witness(static_cast<Eigen::Index>(pairs[g[k]].first), static_cast<Eigen::Index>(pairs[g[k]].second)) =
            d.v(static_cast<Eigen::Index>(k), 0);
      }
    }
  }
  return best;
}

TopSingular lanczos_top(const MatrixMap& map, const InputSubspace& sub, std::uint64_t seed) {
  const std::size_t n = map.dim;
  const auto len = static_cast<Eigen::Index>(n * n);
  const auto total = static_cast<Eigen::Index>(std::min<std::size_t>(sub.size, 400));
  auto op = [&](const ComplexVector& v) -> ComplexVector {
    return vec(sub.project(map.adjoint(map.forward(sub.project(unvec(v, n))))));
  };

  Rng rng(seed);
  TopSingular out;
  out.dense = false;
  ComplexVector start = vec(sub.project(random_gaussian(n, n, rng)));
  if (start.norm() == 0.0) {
    out.witness = ComplexMatrix::Zero(n, n);
    return out;
  }
  // Krylov basis as contiguous columns so reorthogonalization is two gemv calls.
  ComplexMatrix q(len, total);
  q.col(0) = start / start.norm();
  std::vector<double> alpha;
  std::vector<double> beta;
  RealVector ritz_vec;
  double prev_theta = -1.0;
  int still = 0;

  for (Eigen::Index j = 0; j < total; ++j) {
    ComplexVector w = op(q.col(j));
    const double a = q.col(j).dot(w).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      const ComplexVector c = q.leftCols(j + 1).adjoint() * w;
      w.noalias() -= q.leftCols(j + 1) * c;
    }
    const double b = w.norm();
    const bool breakdown = b <= 1e-14 * std::max(std::abs(a), 1e-300);
    const bool last = j + 1 == total;
    if (breakdown || last || j % 4 == 3) {
      const auto m = static_cast<Eigen::Index>(alpha.size());
      RealVector diag = Eigen::Map<const RealVector>(alpha.data(), m);
      RealVector sub_diag = m > 1 ? RealVector(Eigen::Map<const RealVector>(beta.data(), m - 1)) : RealVector(0);
      Eigen::SelfAdjointEigenSolver<RealMatrix> es;
      es.computeFromTridiagonal(diag, sub_diag, Eigen::ComputeEigenvectors);
      const double theta = es.eigenvalues()(m - 1);
      ritz_vec = es.eigenvectors().col(m - 1);
      // Rayleigh-quotient residual; theta is within it of an eigenvalue.
      const double residual = std::abs(b * ritz_vec(m - 1));
      out.iterations = static_cast<std::size_t>(j + 1);
      // Clustered tops (long shift-like paths) converge slowly in the vector
      // but fast in the value; accept a value unchanged over two checks.
      still = std::abs(theta - prev_theta) <= 1e-15 * std::abs(theta) ? still + 1 : 0;
      prev_theta = theta;
      if (breakdown || last || still >= 2 || residual <= 1e-11 * std::max(std::abs(theta), 1e-300)) break;
    }
    beta.push_back(b);
    q.col(j + 1) = w / b;
  }
  const ComplexVector xv = q.leftCols(ritz_vec.size()) * ritz_vec.cast<Complex>();
  ComplexMatrix x = sub.project(unvec(xv, n));
  const double norm = x.norm();
  out.witness = norm > 0.0 ? ComplexMatrix(x / norm) : unvec(q.col(0), n);
  out.value = map.forward(out.witness).norm();
  return out;
}

}  // namespace

TopSingular top_singular(const MatrixMap& map, const InputSubspace& subspace, std::uint64_t seed,
                         std::size_t dense_limit) {
  if (map.dim <= dense_limit) return dense_top(map, subspace);
  if (subspace.units) {
    if (auto exact = block_top(map, subspace)) return *exact;
  }
  return lanczos_top(map, subspace, seed);
}

}  // namespace qds
