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

#include "qds/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qds {

void validate_matrix(const ComplexMatrix& a, std::size_t max_dim) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorCode::kBadParameter, "matrix must be square with dim >= 1");
  }
  if (static_cast<std::size_t>(a.rows()) > max_dim) {
    throw Error(ErrorCode::kBadParameter,
                "matrix dimension " + std::to_string(a.rows()) + " exceeds limit " +
                    std::to_string(max_dim));
  }
  if (!a.allFinite()) throw Error(ErrorCode::kBadParameter, "matrix has non-finite entries");
}

ComplexMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

ComplexMatrix diagonal_matrix(std::span<const double> values) {
  ComplexMatrix d = ComplexMatrix::Zero(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) d(i, i) = values[i];
  return d;
}

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a, const Tolerances& tol) {
  validate_matrix(a);
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol.hermitian_tol) {
    throw Error(ErrorCode::kNonHermitianInput,
                "||a - a^*||_max = " + std::to_string(asym) + " exceeds hermitian_tol");
  }
  m_ = 0.5 * (a + a.adjoint());
}

DensityMatrix::DensityMatrix(const ComplexMatrix& a, const Tolerances& tol) : h_(a, tol) {
  const RealVector ev = eigenvalues_hermitian(h_);
  const double min_ev = ev.minCoeff();
  if (min_ev < -tol.psd_tol) {
    throw Error(ErrorCode::kBadParameter,
                "density matrix has eigenvalue " + std::to_string(min_ev) + " below -psd_tol");
  }
  const double tr = trace(h_.matrix()).real();
  if (std::abs(tr - 1.0) > tol.trace_tol) {
    throw Error(ErrorCode::kBadParameter,
                "density matrix trace " + std::to_string(tr) + " differs from 1");
  }
}

Spectrum eig_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  Spectrum out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RealVector eigenvalues_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

HermitianMatrix spectral_apply(const HermitianMatrix& a, const RealFunction& f) {
  Spectrum s = eig_hermitian(a);
  RealVector fx(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    double t = s.eigenvalues(i);
    if (t < f.lower - f.slack || t > f.upper + f.slack) {
      throw Error(ErrorCode::kDomainError,
                  "eigenvalue " + std::to_string(t) + " outside function domain");
    }
    t = std::clamp(t, f.lower, f.upper);
    fx(i) = f.f(t);
    if (!std::isfinite(fx(i))) {
      throw Error(ErrorCode::kDomainError,
                  "function is not finite at eigenvalue " + std::to_string(t));
    }
  }
  const ComplexMatrix& v = s.eigenvectors;
  ComplexMatrix out = v * fx.cast<Complex>().asDiagonal() * v.adjoint();
  return HermitianMatrix(0.5 * (out + out.adjoint()));
}

Svd svd(const ComplexMatrix& a) {
  Svd out;
  if (a.rows() <= 16 && a.cols() <= 16) {
    Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.singular_values = solver.singularValues();
    out.u = solver.matrixU();
    out.v = solver.matrixV();
  } else {
    Eigen::BDCSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.singular_values = solver.singularValues();
    out.u = solver.matrixU();
    out.v = solver.matrixV();
  }
  return out;
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.rows() <= 16 && a.cols() <= 16) {
    return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
  }
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues();
}

double schatten_norm_from_singular_values(const RealVector& s, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorCode::kBadExponent, "Schatten exponent must satisfy p >= 1");
  }
  if (s.size() == 0) return 0.0;
  const double smax = s.maxCoeff();
  if (std::isinf(p)) return smax;
  if (smax == 0.0) return 0.0;
  if (p == 1.0) return s.sum();
  if (p == 2.0) return s.norm();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / smax, p);
  return smax * std::pow(acc, 1.0 / p);
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorCode::kBadExponent, "Schatten exponent must satisfy p >= 1");
  }
  if (p == 2.0) return a.norm();
  return schatten_norm_from_singular_values(singular_values(a), p);
}

double operator_norm(const ComplexMatrix& a) { return schatten_norm(a, kInfinity); }

Complex trace(const ComplexMatrix& a) { return a.diagonal().sum(); }

ComplexMatrix schatten_dual_element(const ComplexMatrix& a, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorCode::kBadExponent, "Schatten exponent must satisfy p >= 1");
  }
  const Svd d = svd(a);
  const RealVector& s = d.singular_values;
  const Eigen::Index k = s.size();
  RealVector g = RealVector::Zero(k);
  const double smax = k > 0 ? s(0) : 0.0;
  if (smax == 0.0) return ComplexMatrix::Zero(a.rows(), a.cols());
  const double cutoff = smax * 1e-13;
  if (std::isinf(p)) {
    g(0) = 1.0;
  } else if (p == 1.0) {
    for (Eigen::Index i = 0; i < k; ++i) g(i) = s(i) > cutoff ? 1.0 : 0.0;
  } else {
    const double norm = schatten_norm_from_singular_values(s, p);
    for (Eigen::Index i = 0; i < k; ++i) g(i) = std::pow(s(i) / norm, p - 1.0);
  }
  return d.u.leftCols(k) * g.cast<Complex>().asDiagonal() * d.v.leftCols(k).adjoint();
}

double conjugate_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorCode::kBadExponent, "exponent must satisfy p >= 1");
  }
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

}  // namespace qds
