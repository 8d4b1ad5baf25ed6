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

#include "qds/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include "qds/json_io.hpp"

namespace qds {

namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

std::size_t checked_dim(std::size_t dim, const ComplexMatrix& m, std::size_t expected_rows,
                        const char* what) {
  if (dim == 0) throw Error(ErrorCode::kBadParameter, std::string(what) + ": dim must be >= 1");
  if (static_cast<std::size_t>(m.rows()) != expected_rows ||
      static_cast<std::size_t>(m.cols()) != expected_rows) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": expected a " + std::to_string(expected_rows) +
                    "x" + std::to_string(expected_rows) + " matrix");
  }
  if (!m.allFinite()) throw Error(ErrorCode::kBadParameter, std::string(what) + ": non-finite entries");
  return dim;
}

void require_dim(const Channel& ch, const ComplexMatrix& x) {
  if (static_cast<std::size_t>(x.rows()) != ch.dim() ||
      static_cast<std::size_t>(x.cols()) != ch.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                    ", channel acts on dim " + std::to_string(ch.dim()));
  }
}

// Index of vec(x^T) entry for a given vec(x) index (column stacking).
inline Eigen::Index transpose_index(Eigen::Index a, Eigen::Index n) { return (a / n) + (a % n) * n; }

ComplexMatrix identity(std::size_t n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

struct Channel::SparseKraus {
  std::vector<SparseMatrix> ops;
  std::vector<SparseMatrix> adj;
};

const char* representation_name(Representation r) {
  switch (r) {
    case Representation::kKraus: return "kraus";
    case Representation::kChoi: return "choi";
    case Representation::kSuperop: return "superop";
  }
  return "kraus";
}

Representation parse_representation(std::string_view name) {
  if (name == "kraus") return Representation::kKraus;
  if (name == "choi") return Representation::kChoi;
  if (name == "superop") return Representation::kSuperop;
  throw Error(ErrorCode::kBadParameter, "unknown representation '" + std::string(name) + "'");
}

Channel::Channel(KrausSet kraus, ChannelMeta meta) : dim_(kraus.dim), meta_(std::move(meta)) {
  if (kraus.operators.empty()) throw Error(ErrorCode::kBadParameter, "Kraus set must be non-empty");
  for (const auto& k : kraus.operators) checked_dim(kraus.dim, k, kraus.dim, "Kraus operator");
  // Sparse operators (matrix units, shifts, scaled identities) are applied in
  // O(nnz * n); this keeps the large truncated examples cheap.
  const std::size_t n = kraus.dim;
  std::size_t nnz_total = 0;
  for (const auto& k : kraus.operators) nnz_total += (k.array() != Complex(0.0)).count();
  if (n >= 8 && nnz_total * 4 <= kraus.operators.size() * n * n) {
    auto sk = std::make_shared<SparseKraus>();
    for (const auto& k : kraus.operators) {
      SparseMatrix s = k.sparseView();
      s.makeCompressed();
      sk->adj.push_back(SparseMatrix(s.adjoint()));
      sk->ops.push_back(std::move(s));
    }
    sparse_ = std::move(sk);
  }
  repr_ = std::move(kraus);
}

Channel::Channel(ChoiMatrix choi, ChannelMeta meta) : dim_(choi.dim), meta_(std::move(meta)) {
  checked_dim(choi.dim, choi.matrix, choi.dim * choi.dim, "Choi matrix");
  repr_ = std::move(choi);
}

Channel::Channel(SuperopMatrix superop, ChannelMeta meta) : dim_(superop.dim), meta_(std::move(meta)) {
  checked_dim(superop.dim, superop.matrix, superop.dim * superop.dim, "superoperator");
  repr_ = std::move(superop);
}

Representation Channel::representation() const {
  if (kraus()) return Representation::kKraus;
  if (choi()) return Representation::kChoi;
  return Representation::kSuperop;
}

Channel Channel::with_meta(ChannelMeta meta) const {
  Channel copy = *this;
  copy.meta_ = std::move(meta);
  return copy;
}

ComplexMatrix Channel::apply_unit(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw Error(ErrorCode::kDimensionMismatch, "matrix unit index out of range");
  const auto n = static_cast<Eigen::Index>(dim_);
  const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
  if (sparse_) {
    // K E_ij K^* = (K e_i)(K e_j)^*
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (const auto& op : sparse_->ops) {
      for (SparseMatrix::InnerIterator a(op, ii); a; ++a)
        for (SparseMatrix::InnerIterator b(op, jj); b; ++b) out(a.row(), b.row()) += a.value() * std::conj(b.value());
    }
    return out;
  }
  if (const auto* c = choi()) return c->matrix.block(ii * n, jj * n, n, n);
  if (const auto* s = superop()) return unvec(s->matrix.col(ii + jj * n), dim_);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& op : kraus()->operators) out.noalias() += op.col(ii) * op.col(jj).adjoint();
  return out;
}

ComplexMatrix Channel::apply(const ComplexMatrix& x) const {
  require_dim(*this, x);
  const auto n = static_cast<Eigen::Index>(dim_);
  if (const auto* k = kraus()) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    if (sparse_) {
      for (std::size_t i = 0; i < sparse_->ops.size(); ++i) {
        const ComplexMatrix kx = sparse_->ops[i] * x;
        out += (sparse_->ops[i].conjugate() * kx.transpose()).transpose();
      }
    } else {
      for (const auto& op : k->operators) out.noalias() += op * x * op.adjoint();
    }
    return out;
  }
  if (const auto* c = choi()) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (x(i, j) != Complex(0.0)) out += x(i, j) * c->matrix.block(i * n, j * n, n, n);
      }
    }
    return out;
  }
  return unvec(superop()->matrix * vec(x), dim_);
}

ComplexMatrix Channel::apply_hs_adjoint(const ComplexMatrix& y) const {
  require_dim(*this, y);
  const auto n = static_cast<Eigen::Index>(dim_);
  if (const auto* k = kraus()) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    if (sparse_) {
      for (std::size_t i = 0; i < sparse_->ops.size(); ++i) {
        const ComplexMatrix ky = sparse_->adj[i] * y;
        out += (sparse_->ops[i].transpose() * ky.transpose()).transpose();
      }
    } else {
      for (const auto& op : k->operators) out.noalias() += op.adjoint() * y * op;
    }
    return out;
  }
  if (const auto* c = choi()) {
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        out(i, j) = (c->matrix.block(i * n, j * n, n, n).conjugate().cwiseProduct(y)).sum();
      }
    }
    return out;
  }
  return unvec(superop()->matrix.adjoint() * vec(y), dim_);
}

ComplexMatrix apply(const Channel& channel, const ComplexMatrix& x) { return channel.apply(x); }

Channel adjoint(const Channel& channel) {
  ChannelMeta meta = channel.meta();
  meta.name = meta.name.empty() ? "adjoint" : meta.name + "_adjoint";
  if (const auto* k = channel.kraus()) {
    KrausSet out{k->dim, {}};
    out.operators.reserve(k->operators.size());
    for (const auto& op : k->operators) out.operators.push_back(op.adjoint());
    return Channel(std::move(out), meta);
  }
  const SuperopMatrix s = to_superop(channel);
  const auto n = static_cast<Eigen::Index>(s.dim);
  const Eigen::Index d = n * n;
  ComplexMatrix adj(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      adj(a, b) = s.matrix(transpose_index(b, n), transpose_index(a, n));
    }
  }
  return Channel(SuperopMatrix{s.dim, std::move(adj)}, meta);
}

ChoiMatrix kraus_to_choi(const KrausSet& kraus) {
  const std::size_t n = kraus.dim;
  ComplexMatrix c = ComplexMatrix::Zero(n * n, n * n);
  for (const auto& k : kraus.operators) {
    const ComplexVector v = vec(k);
    c.noalias() += v * v.adjoint();
  }
  return ChoiMatrix{n, std::move(c)};
}

KrausSet choi_to_kraus(const ChoiMatrix& choi, const Tolerances& tol) {
  const HermitianMatrix h(choi.matrix, tol);
  const Spectrum s = eig_hermitian(h);
  const double min_ev = s.eigenvalues.minCoeff();
  if (min_ev < -tol.psd_tol) {
    throw Error(ErrorCode::kNotCompletelyPositive,
                "Choi matrix has eigenvalue " + std::to_string(min_ev));
  }
  KrausSet out{choi.dim, {}};
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double lam = s.eigenvalues(i);
    if (lam <= tol.psd_tol) break;
    out.operators.push_back(std::sqrt(lam) * unvec(s.eigenvectors.col(i), choi.dim));
  }
  if (out.operators.empty()) out.operators.push_back(ComplexMatrix::Zero(choi.dim, choi.dim));
  return out;
}

SuperopMatrix to_superop(const Channel& channel) {
  const std::size_t n = channel.dim();
  const auto ni = static_cast<Eigen::Index>(n);
  if (const auto* s = channel.superop()) return *s;
  ComplexMatrix m(n * n, n * n);
  if (const auto* k = channel.kraus()) {
    m.setZero();
    for (const auto& op : k->operators) m.noalias() += Eigen::kroneckerProduct(op.conjugate(), op);
    return SuperopMatrix{n, std::move(m)};
  }
  const ComplexMatrix& c = channel.choi()->matrix;
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = 0; j < ni; ++j)
      for (Eigen::Index k = 0; k < ni; ++k)
        for (Eigen::Index l = 0; l < ni; ++l) m(k + l * ni, i + j * ni) = c(i * ni + k, j * ni + l);
  return SuperopMatrix{n, std::move(m)};
}

ChoiMatrix to_choi(const Channel& channel) {
  if (const auto* c = channel.choi()) return *c;
  if (const auto* k = channel.kraus()) return kraus_to_choi(*k);
  const std::size_t n = channel.dim();
  const auto ni = static_cast<Eigen::Index>(n);
  const ComplexMatrix& s = channel.superop()->matrix;
  ComplexMatrix c(n * n, n * n);
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = 0; j < ni; ++j)
      for (Eigen::Index k = 0; k < ni; ++k)
        for (Eigen::Index l = 0; l < ni; ++l) c(i * ni + k, j * ni + l) = s(k + l * ni, i + j * ni);
  return ChoiMatrix{n, std::move(c)};
}

KrausSet to_kraus(const Channel& channel, const Tolerances& tol) {
  if (const auto* k = channel.kraus()) return *k;
  return choi_to_kraus(to_choi(channel), tol);
}

Channel convert(const Channel& channel, Representation target, const Tolerances& tol) {
  if (channel.representation() == target) return channel;
  switch (target) {
    case Representation::kKraus: return Channel(to_kraus(channel, tol), channel.meta());
    case Representation::kChoi: return Channel(to_choi(channel), channel.meta());
    case Representation::kSuperop: return Channel(to_superop(channel), channel.meta());
  }
  return channel;
}

namespace {

RealVector kraus_gram_eigenvalues(const KrausSet& k) {
  const std::size_t r = k.operators.size();
  ComplexMatrix g(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) g(a, b) = (k.operators[a].adjoint() * k.operators[b]).trace();
  // Gram entries are <K_a, K_b>; the Choi matrix is sum_a vec(K_a) vec(K_a)^*.
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .reverse();
}

struct ChoiSpectrumInfo {
  RealVector eigenvalues;  // non-increasing, only the possibly-nonzero part for Kraus input
  bool full = true;        // false when zero eigenvalues are implied but not listed
  bool hermitian = true;
};

ChoiSpectrumInfo choi_spectrum(const Channel& channel, double hermitian_tol) {
  ChoiSpectrumInfo info;
  const std::size_t n = channel.dim();
  if (const auto* k = channel.kraus()) {
    info.eigenvalues = kraus_gram_eigenvalues(*k);
    info.full = k->operators.size() >= n * n;
    return info;
  }
  const ChoiMatrix c = to_choi(channel);
  const double asym = (c.matrix - c.matrix.adjoint()).cwiseAbs().maxCoeff();
  info.hermitian = asym <= hermitian_tol;
  const ComplexMatrix herm = 0.5 * (c.matrix + c.matrix.adjoint());
  info.eigenvalues = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(herm, Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .reverse();
  return info;
}

}  // namespace

double choi_min_eigenvalue(const Channel& channel) {
  const ChoiSpectrumInfo info = choi_spectrum(channel, kInfinity);
  const double m = info.eigenvalues.minCoeff();
  return info.full ? m : std::min(m, 0.0);
}

std::size_t choi_rank(const Channel& channel, double tol) {
  const ChoiSpectrumInfo info = choi_spectrum(channel, kInfinity);
  return static_cast<std::size_t>((info.eigenvalues.array().abs() > tol).count());
}

QdsReport certify_qds(const Channel& channel, const Tolerances& tol) {
  const std::size_t n = channel.dim();
  QdsReport r;
  r.tp_residual = operator_norm(channel.apply_hs_adjoint(identity(n)) - identity(n));
  r.unital_residual = operator_norm(channel.apply(identity(n)) - identity(n));
  if (n <= 16 || channel.kraus()) {
    const ChoiSpectrumInfo info = choi_spectrum(channel, tol.hermitian_tol);
    const double m = info.eigenvalues.minCoeff();
    r.choi_min_eig = info.full ? m : std::min(m, 0.0);
    r.choi_hermitian = info.hermitian;
  } else {
    r.choi_min_eig = choi_min_eigenvalue(channel);
  }
  r.is_qds = r.tp_residual <= tol.tp_tol && r.unital_residual <= tol.un_tol &&
             r.choi_min_eig >= -tol.psd_tol && r.choi_hermitian;
  return r;
}

PositivityProbe positivity_probe(const Channel& channel, std::size_t samples, Rng& rng,
                                 const Tolerances& tol) {
  PositivityProbe out;
  out.samples = samples;
  out.min_output_eigenvalue = kInfinity;
  const std::size_t n = channel.dim();
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexMatrix y = channel.apply(random_pure_state(n, rng));
    const double asym = (y - y.adjoint()).cwiseAbs().maxCoeff();
    const ComplexMatrix h = 0.5 * (y + y.adjoint());
    const double m =
        Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
    out.min_output_eigenvalue = std::min(out.min_output_eigenvalue, m);
    if (asym > tol.hermitian_tol || m < -tol.psd_tol) out.positive_on_samples = false;
  }
  if (samples == 0) out.min_output_eigenvalue = 0.0;
  return out;
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.dim() != inner.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "compose: channel dimensions differ");
  }
  ChannelMeta meta{outer.meta().name + "_o_" + inner.meta().name, nlohmann::json::object()};
  if (outer.kraus() && inner.kraus()) {
    KrausSet out{outer.dim(), {}};
    for (const auto& a : outer.kraus()->operators)
      for (const auto& b : inner.kraus()->operators) out.operators.push_back(a * b);
    return Channel(std::move(out), meta);
  }
  return Channel(SuperopMatrix{outer.dim(), to_superop(outer).matrix * to_superop(inner).matrix}, meta);
}

ComplexMatrix truncated_shift(std::size_t n) {
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) s(k + 1, k) = 1.0;
  return s;
}

ComplexMatrix permutation_unitary(std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
  return p;
}

Channel identity_channel(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kBadParameter, "identity: n must be >= 1");
  return Channel(KrausSet{n, {identity(n)}}, {"identity", {{"n", n}}});
}

Channel depolarizing(double t, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kBadParameter, "depolarizing: n must be >= 1");
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::kBadParameter, "depolarizing: t must lie in [0,1]");
  // t x + (1-t) tr(x)/n 1, using tr(x) 1 = sum_ij E_ij x E_ji.
  KrausSet k{n, {}};
  if (t > 0.0) k.operators.push_back(std::sqrt(t) * identity(n));
  if (t < 1.0) {
    const double c = std::sqrt((1.0 - t) / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) k.operators.push_back(c * matrix_unit(n, i, j));
  }
  return Channel(std::move(k), {"depolarizing", {{"t", t}, {"n", n}}});
}

Channel pinching(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kBadParameter, "pinching: n must be >= 1");
  KrausSet k{n, {}};
  for (std::size_t i = 0; i < n; ++i) k.operators.push_back(matrix_unit(n, i, i));
  return Channel(std::move(k), {"pinching", {{"n", n}}});
}

namespace {

void require_unitary(const ComplexMatrix& u, const Tolerances& tol) {
  validate_matrix(u);
  const auto n = u.rows();
  const double dev = (u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev > tol.orth_tol) {
    throw Error(ErrorCode::kBadParameter, "matrix is not unitary (||u^*u - 1||_max = " +
                                              std::to_string(dev) + ")");
  }
}

}  // namespace

Channel unitary_conjugation(const ComplexMatrix& u, const Tolerances& tol) {
  require_unitary(u, tol);
  const auto n = static_cast<std::size_t>(u.rows());
  return Channel(KrausSet{n, {u}}, {"unitary", {{"u", matrix_to_json(u)}}});
}

Channel mixed_unitary(std::span<const double> weights, std::span<const ComplexMatrix> unitaries,
                      const Tolerances& tol) {
  if (weights.empty() || weights.size() != unitaries.size()) {
    throw Error(ErrorCode::kBadParameter, "mixed_unitary: need one weight per unitary");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::kBadParameter, "mixed_unitary: weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > tol.conv_tol) {
    throw Error(ErrorCode::kBadParameter, "mixed_unitary: weights must sum to 1");
  }
  const auto n = static_cast<std::size_t>(unitaries[0].rows());
  KrausSet k{n, {}};
  nlohmann::json us = nlohmann::json::array();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require_unitary(unitaries[i], tol);
    if (static_cast<std::size_t>(unitaries[i].rows()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "mixed_unitary: unitaries differ in dimension");
    }
    us.push_back(matrix_to_json(unitaries[i]));
    if (weights[i] > 0.0) k.operators.push_back(std::sqrt(weights[i]) * unitaries[i]);
  }
  nlohmann::json params{{"weights", std::vector<double>(weights.begin(), weights.end())}, {"unitaries", us}};
  return Channel(std::move(k), {"mixed_unitary", std::move(params)});
}

Channel shift_average(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kBadParameter, "shift_average: N must be >= 2");
  const double c = 1.0 / std::sqrt(2.0);
  return Channel(KrausSet{n, {c * identity(n), c * truncated_shift(n)}}, {"shift_average", {{"N", n}}});
}

Channel damped_pinching(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n < 2) throw Error(ErrorCode::kBadParameter, "damped_pinching: need N >= 2 weights");
  KrausSet k{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::kBadParameter, "damped_pinching: weights must be finite and >= 0");
    }
    if (weights[i] > 0.0) k.operators.push_back(std::sqrt(weights[i]) * matrix_unit(n, i, i));
  }
  if (k.operators.empty()) k.operators.push_back(ComplexMatrix::Zero(n, n));
  return Channel(std::move(k),
                 {"damped_pinching", {{"weights", std::vector<double>(weights.begin(), weights.end())}}});
}

Channel transpose_map(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kBadParameter, "transpose: n must be >= 1");
  ComplexMatrix c = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i * n + j, j * n + i) = 1.0;
  return Channel(ChoiMatrix{n, std::move(c)}, {"transpose", {{"n", n}}});
}

Channel random_mixed_unitary(std::size_t n, std::size_t terms, Rng& rng) {
  if (n == 0 || terms == 0) throw Error(ErrorCode::kBadParameter, "random_mixed_unitary: n, terms >= 1");
  const std::vector<double> w = random_simplex(terms, rng);
  std::vector<ComplexMatrix> us;
  for (std::size_t i = 0; i < terms; ++i) us.push_back(random_unitary(n, rng));
  KrausSet k{n, {}};
  for (std::size_t i = 0; i < terms; ++i) k.operators.push_back(std::sqrt(w[i]) * us[i]);
  return Channel(std::move(k), {"random_mixed_unitary", {{"n", n}, {"terms", terms}}});
}

Channel random_cp_map(std::size_t n, std::size_t rank, Rng& rng) {
  KrausSet k{n, {}};
  const double scale = 1.0 / std::sqrt(static_cast<double>(n * std::max<std::size_t>(rank, 1)));
  for (std::size_t i = 0; i < std::max<std::size_t>(rank, 1); ++i) {
    k.operators.push_back(scale * random_gaussian(n, n, rng));
  }
  return Channel(std::move(k), {"random_cp", {{"n", n}, {"rank", rank}}});
}

namespace {

std::size_t param_size(const nlohmann::json& p, const char* key, std::size_t fallback, bool required) {
  if (!p.contains(key)) {
    if (required) throw Error(ErrorCode::kBadParameter, std::string("missing parameter '") + key + "'");
    return fallback;
  }
  const auto& v = p.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(ErrorCode::kBadParameter, std::string("parameter '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double param_real(const nlohmann::json& p, const char* key, double fallback, bool required) {
  if (!p.contains(key)) {
    if (required) throw Error(ErrorCode::kBadParameter, std::string("missing parameter '") + key + "'");
    return fallback;
  }
  if (!p.at(key).is_number()) throw Error(ErrorCode::kBadParameter, std::string("parameter '") + key + "' must be a number");
  return p.at(key).get<double>();
}

std::vector<double> param_reals(const nlohmann::json& p, const char* key) {
  if (!p.contains(key) || !p.at(key).is_array()) {
    throw Error(ErrorCode::kBadParameter, std::string("parameter '") + key + "' must be an array");
  }
  std::vector<double> out;
  for (const auto& v : p.at(key)) {
    if (!v.is_number()) throw Error(ErrorCode::kBadParameter, std::string("parameter '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Channel channel_zoo(std::string_view name, const nlohmann::json& params, const Tolerances& tol) {
  const nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;
  if (!p.is_object()) throw Error(ErrorCode::kBadParameter, "zoo parameters must be an object");
  if (name == "identity") return identity_channel(param_size(p, "n", 2, false));
  if (name == "depolarizing") return depolarizing(param_real(p, "t", 0.5, false), param_size(p, "n", 2, false));
  if (name == "pinching") return pinching(param_size(p, "n", 2, false));
  if (name == "transpose") return transpose_map(param_size(p, "n", 2, false));
  if (name == "shift_average") return shift_average(param_size(p, "N", 64, false));
  if (name == "unitary") {
    if (!p.contains("u")) throw Error(ErrorCode::kBadParameter, "missing parameter 'u'");
    return unitary_conjugation(matrix_from_json(p.at("u")), tol);
  }
  if (name == "mixed_unitary") {
    const std::vector<double> w = param_reals(p, "weights");
    if (!p.contains("unitaries") || !p.at("unitaries").is_array()) {
      throw Error(ErrorCode::kBadParameter, "parameter 'unitaries' must be an array of matrices");
    }
    std::vector<ComplexMatrix> us;
    for (const auto& u : p.at("unitaries")) us.push_back(matrix_from_json(u));
    return mixed_unitary(w, us, tol);
  }
  if (name == "damped_pinching") {
    std::vector<double> w;
    if (p.contains("weights")) {
      w = param_reals(p, "weights");
    } else {
      const std::size_t n = param_size(p, "N", 64, false);
      const double decay = param_real(p, "decay", 0.5, false);
      if (!(decay >= 0.0 && decay <= 1.0)) throw Error(ErrorCode::kBadParameter, "damped_pinching: decay must lie in [0,1]");
      for (std::size_t k = 1; k <= n; ++k) w.push_back(std::pow(decay, static_cast<double>(k)));
    }
    return damped_pinching(w);
  }
  if (name == "random_mixed_unitary") {
    Rng rng(param_size(p, "seed", 0, false));
    Channel ch = random_mixed_unitary(param_size(p, "n", 4, false), param_size(p, "terms", 3, false), rng);
    return ch.with_meta({"random_mixed_unitary", p});
  }
  throw Error(ErrorCode::kUnknownExample, "unknown zoo channel '" + std::string(name) + "'");
}

}  // namespace qds
