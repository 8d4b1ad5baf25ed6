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
#include <functional>
#include <utility>
#include <vector>

#include "qds/channels.hpp"
#include "qds/matcore.hpp"

namespace qds {

// Linear map on n x n matrices together with its Hilbert-Schmidt adjoint.
struct MatrixMap {
  std::size_t dim = 0;
  std::function<ComplexMatrix(const ComplexMatrix&)> forward;
  std::function<ComplexMatrix(const ComplexMatrix&)> adjoint;
  // optional fast forward(E_ij)
  std::function<ComplexMatrix(std::size_t, std::size_t)> unit;
};

MatrixMap channel_map(const Channel& channel);
// a - b as a map.
MatrixMap difference_map(const Channel& a, const Channel& b);

// Input subspace of M_n: an orthonormal basis (used when n is small enough
// for a dense SVD) and the orthogonal projector onto it (used otherwise).
struct InputSubspace {
  std::size_t dim = 0;
  std::size_t size = 0;
  std::function<std::vector<ComplexMatrix>()> basis;
  std::function<ComplexMatrix(const ComplexMatrix&)> project;
  // Set when the basis consists of matrix units E_ij: their (i, j) pairs.
  std::function<std::vector<std::pair<std::size_t, std::size_t>>()> units;
};

InputSubspace full_space(std::size_t n);
// {x : tr x = 0}, basis in generalized Gell-Mann order.
InputSubspace traceless_space(std::size_t n);
// Matrices supported on the trailing (n - rank) x (n - rank) corner.
InputSubspace corner_space(std::size_t n, std::size_t rank);

// Hilbert-Schmidt orthonormal generalized Gell-Mann basis of the traceless
// matrices: symmetric pairs, antisymmetric pairs (j < k), then diagonals.
std::vector<ComplexMatrix> gell_mann_basis(std::size_t n);

struct TopSingular {
  double value = 0.0;
  ComplexMatrix witness;  // unit Hilbert-Schmidt norm, inside the subspace
  bool dense = true;
  std::size_t iterations = 0;
};

// Largest singular value of map restricted to the subspace. Dense SVD when
// n <= dense_limit, otherwise Lanczos on P A^* A P with full
// reorthogonalization.
TopSingular top_singular(const MatrixMap& map, const InputSubspace& subspace, std::uint64_t seed,
                         std::size_t dense_limit = 16);

}  // namespace qds
