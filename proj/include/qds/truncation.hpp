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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qds/channels.hpp"
#include "qds/norms.hpp"

namespace qds {

struct TailNormResult {
  double value = 0.0;
  ComplexMatrix witness;
  bool exact = true;  // p = 2
};

// sup over unit-p-norm x of ||Phi((1 - e) x (1 - e))||_p with e the
// projection onto the first `rank` basis vectors. Exact at p = 2, ascent
// lower bound otherwise. Throws kBadRank unless 1 <= rank < dim.
TailNormResult tail_norm(const Channel& channel, std::size_t rank, double p, std::uint64_t seed = 0,
                         const AscentOptions& opts = {});

struct TailScan {
  std::string example_name;
  double p = 2.0;
  std::size_t ambient_dim = 0;
  std::vector<std::pair<std::size_t, double>> points;  // (rank, tail_norm)
  bool monotone = true;
  std::string classification;  // "compact-like" or "non-compact-like"
  std::vector<std::string> notes;
};

inline constexpr double kCompactThreshold = 0.01;

// Named truncated example on ambient dimension n: pinching,
// damped_pinching (c_k = decay^k, k = 1..n) or shift_average.
Channel tail_example(const std::string& name, std::size_t n, double decay = 0.5);

// Ranks must be strictly increasing and below n. Throws kUnknownExample.
TailScan scan(const std::string& example, std::size_t n, double p, std::span<const std::size_t> ranks,
              std::uint64_t seed = 0, const AscentOptions& opts = {}, double decay = 0.5);
TailScan scan_channel(const Channel& channel, const std::string& name, double p, std::span<const std::size_t> ranks,
                      std::uint64_t seed = 0, const AscentOptions& opts = {});

}  // namespace qds
