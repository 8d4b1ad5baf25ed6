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

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qds/matcore.hpp"
#include "qds/random.hpp"

namespace qds {

// Kraus convention: Phi(x) = sum_i K_i x K_i^*. Trace preservation is
// sum_i K_i^* K_i = 1 and unitality is sum_i K_i K_i^* = 1.
struct KrausSet {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> operators;
};

// Unnormalized Choi matrix sum_{ij} E_ij (x) Phi(E_ij), size dim^2; trace
// equals dim for trace-preserving maps.
struct ChoiMatrix {
  std::size_t dim = 0;
  ComplexMatrix matrix;
};

// Matrix of Phi acting on column-stacked vec(x), size dim^2.
struct SuperopMatrix {
  std::size_t dim = 0;
  ComplexMatrix matrix;
};

enum class Representation { kKraus, kChoi, kSuperop };

const char* representation_name(Representation r);
Representation parse_representation(std::string_view name);

struct ChannelMeta {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

/// Linear map on M_n(C) held in one of three representations. Immutable.
class Channel {
 public:
  explicit Channel(KrausSet kraus, ChannelMeta meta = {});
  explicit Channel(ChoiMatrix choi, ChannelMeta meta = {});
  explicit Channel(SuperopMatrix superop, ChannelMeta meta = {});

  std::size_t dim() const { return dim_; }
  Representation representation() const;
  const ChannelMeta& meta() const { return meta_; }

  const KrausSet* kraus() const { return std::get_if<KrausSet>(&repr_); }
  const ChoiMatrix* choi() const { return std::get_if<ChoiMatrix>(&repr_); }
  const SuperopMatrix* superop() const { return std::get_if<SuperopMatrix>(&repr_); }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  // Adjoint for the Hilbert-Schmidt inner product <a, b> = tr(a^* b).
  ComplexMatrix apply_hs_adjoint(const ComplexMatrix& y) const;
  // apply(E_ij) without forming the matrix unit.
  ComplexMatrix apply_unit(std::size_t i, std::size_t j) const;

  Channel with_meta(ChannelMeta meta) const;

 private:
  struct SparseKraus;

  std::size_t dim_;
  std::variant<KrausSet, ChoiMatrix, SuperopMatrix> repr_;
  ChannelMeta meta_;
  std::shared_ptr<const SparseKraus> sparse_;
};

ComplexMatrix apply(const Channel& channel, const ComplexMatrix& x);

// Adjoint with respect to the bilinear pairing tr(y Phi(x)) = tr(Phi^*(y) x).
// Kraus input yields the Kraus set {K_i^*}.
Channel adjoint(const Channel& channel);

ChoiMatrix kraus_to_choi(const KrausSet& kraus);
// Eigendecomposition of the Choi matrix; eigenvalues below psd_tol dropped.
KrausSet choi_to_kraus(const ChoiMatrix& choi, const Tolerances& tol = {});
SuperopMatrix to_superop(const Channel& channel);
ChoiMatrix to_choi(const Channel& channel);
KrausSet to_kraus(const Channel& channel, const Tolerances& tol = {});
Channel convert(const Channel& channel, Representation target, const Tolerances& tol = {});

struct QdsReport {
  double tp_residual = 0.0;
  double unital_residual = 0.0;
  double choi_min_eig = 0.0;
  bool choi_hermitian = true;
  bool is_qds = false;
};

QdsReport certify_qds(const Channel& channel, const Tolerances& tol = {});

// Smallest Choi eigenvalue. Kraus input uses the Gram matrix of the
// operators, which shares the nonzero spectrum of the Choi matrix.
double choi_min_eigenvalue(const Channel& channel);
std::size_t choi_rank(const Channel& channel, double tol);

// Heuristic positivity test on random pure-state inputs. Not exhaustive: a
// pass does not prove positivity.
struct PositivityProbe {
  std::size_t samples = 0;
  double min_output_eigenvalue = 0.0;
  bool positive_on_samples = true;
};
PositivityProbe positivity_probe(const Channel& channel, std::size_t samples, Rng& rng,
                                 const Tolerances& tol = {});

// outer o inner.
Channel compose(const Channel& outer, const Channel& inner);

// Example maps.
ComplexMatrix truncated_shift(std::size_t n);
ComplexMatrix permutation_unitary(std::span<const std::size_t> perm);

Channel identity_channel(std::size_t n);
Channel depolarizing(double t, std::size_t n);
Channel pinching(std::size_t n);
Channel unitary_conjugation(const ComplexMatrix& u, const Tolerances& tol = {});
Channel mixed_unitary(std::span<const double> weights, std::span<const ComplexMatrix> unitaries,
                      const Tolerances& tol = {});
Channel shift_average(std::size_t n);
Channel damped_pinching(std::span<const double> weights);
Channel transpose_map(std::size_t n);
Channel random_mixed_unitary(std::size_t n, std::size_t terms, Rng& rng);
// Random CP map with Gaussian Kraus operators; neither trace-preserving nor unital.
Channel random_cp_map(std::size_t n, std::size_t rank, Rng& rng);

// Named constructor used by the CLI and channel files. Names: identity,
// depolarizing, pinching, unitary, mixed_unitary, shift_average,
// damped_pinching, transpose, random_mixed_unitary.
Channel channel_zoo(std::string_view name, const nlohmann::json& params,
                    const Tolerances& tol = {});

}  // namespace qds
