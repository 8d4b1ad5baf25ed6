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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qds/channels.hpp"
#include "qds/error.hpp"
#include "qds/matcore.hpp"
#include "qds/random.hpp"

namespace qds::testing {

// Max-abs entry; the test-side notion of ||.||_max, kept apart from the
// library's norms.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

// Kraus-sum evaluation written out directly, independent of Channel.
inline ComplexMatrix kraus_apply(const std::vector<ComplexMatrix>& ks, const ComplexMatrix& x) {
  ComplexMatrix y = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& k : ks) y += k * x * k.adjoint();
  return y;
}

// Random QDS map: a mixed unitary with 1..4 terms on dimension n.
template <typename F>
void expect_code(ErrorCode code, F&& body) {
  try {
    body();
    ADD_FAILURE() << "expected " << error_code_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

inline Channel random_qds(std::size_t n, Rng& rng) {
  const std::size_t terms = 1 + rng.index(4);
  return random_mixed_unitary(n, terms, rng);
}

}  // namespace qds::testing
