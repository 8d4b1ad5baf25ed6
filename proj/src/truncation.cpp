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

#include "qds/truncation.hpp"

#include <cmath>

#include "qds/linear_map.hpp"
#include "qds/random.hpp"

namespace qds {

TailNormResult tail_norm(const Channel& channel, std::size_t rank, double p, std::uint64_t seed,
                         const AscentOptions& opts) {
  if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::kBadExponent, "tail norm needs p >= 1");
  const std::size_t n = channel.dim();
  if (rank < 1 || rank >= n) {
    throw Error(ErrorCode::kBadRank, "rank must satisfy 1 <= rank < " + std::to_string(n));
  }
  const MatrixMap map = channel_map(channel);
  const InputSubspace corner = corner_space(n, rank);
  TailNormResult out;
  if (p == 2.0) {
    const TopSingular ts = top_singular(map, corner, seed);
    out.value = ts.value;
    out.witness = ts.witness;
    return out;
  }
  out.exact = false;
  std::vector<ComplexMatrix> seeds;
  ComplexMatrix corner_id = ComplexMatrix::Zero(n, n);
  for (std::size_t k = rank; k < n; ++k) {
    corner_id(k, k) = 1.0;
    if (k < rank + 16) seeds.push_back(matrix_unit(n, k, k));
  }
  seeds.push_back(corner_id);
  const AscentResult asc = ascent_lower_bound(map, p, &corner, seeds, seed, opts);
  out.value = asc.value;
  out.witness = asc.witness;
  return out;
}

Channel tail_example(const std::string& name, std::size_t n, double decay) {
  if (name == "pinching") return pinching(n);
  if (name == "shift_average") return shift_average(n);
  if (name == "damped_pinching") {
    if (!(decay >= 0.0 && decay <= 1.0)) throw Error(ErrorCode::kBadParameter, "decay must lie in [0,1]");
    std::vector<double> w;
    for (std::size_t k = 1; k <= n; ++k) w.push_back(std::pow(decay, static_cast<double>(k)));
    return damped_pinching(w);
  }
  throw Error(ErrorCode::kUnknownExample, "unknown tail-scan example '" + name + "'");
}

TailScan scan_channel(const Channel& channel, const std::string& name, double p, std::span<const std::size_t> ranks,
                      std::uint64_t seed, const AscentOptions& opts) {
  const std::size_t n = channel.dim();
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 1 || ranks[i] >= n) throw Error(ErrorCode::kBadRank, "ranks must lie in [1, N)");
    if (i > 0 && ranks[i] <= ranks[i - 1]) throw Error(ErrorCode::kBadRank, "ranks must be strictly increasing");
  }
  TailScan s;
  s.example_name = name;
  s.p = p;
  s.ambient_dim = n;
  const Rng root(seed);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const TailNormResult t = tail_norm(channel, ranks[i], p, root.child(i).engine()(), opts);
    if (!s.points.empty() && t.value > s.points.back().second + 1e-9) {
      s.monotone = false;
      s.notes.push_back("tail norm increased at rank " + std::to_string(ranks[i]));
    }
    s.points.emplace_back(ranks[i], t.value);
  }
  const double last = s.points.empty() ? 0.0 : s.points.back().second;
  s.classification = last < kCompactThreshold ? "compact-like" : "non-compact-like";
  if (p != 2.0) s.notes.push_back("p != 2: tail values are ascent lower bounds");
  if (name == "shift_average") {
    s.notes.push_back("truncated shift is not trace-preserving at the boundary; leakage reported, not corrected");
  }
  return s;
}

TailScan scan(const std::string& example, std::size_t n, double p, std::span<const std::size_t> ranks,
              std::uint64_t seed, const AscentOptions& opts, double decay) {
  return scan_channel(tail_example(example, n, decay), example, p, ranks, seed, opts);
}

}  // namespace qds
