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
#include <random>
#include <vector>

#include "qds/matcore.hpp"

namespace qds {

// Seeded generator. Child streams are derived from (seed, index) with
// splitmix64 so that batch trials are independent of execution order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  Rng child(std::uint64_t index) const { return Rng(mix(seed_ ^ mix(index + 0x9e3779b97f4a7c15ULL))); }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  std::mt19937_64& engine() { return engine_; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);
// Haar-distributed: QR of a complex Gaussian matrix with the R-diagonal phases removed.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);
// Random density matrix of the given rank (rank = n gives full rank).
ComplexMatrix random_density(std::size_t n, std::size_t rank, Rng& rng);
ComplexMatrix random_pure_state(std::size_t n, Rng& rng);
// Probability vector drawn from a flat Dirichlet distribution.
std::vector<double> random_simplex(std::size_t k, Rng& rng);
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

}  // namespace qds
