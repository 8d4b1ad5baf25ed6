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

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>

#include <Eigen/Dense>

#include "qds/config.hpp"
#include "qds/error.hpp"

namespace qds {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kMaxDim = 256;

// Square, finite, 1 <= dim. Throws kBadParameter otherwise.
void validate_matrix(const ComplexMatrix& a, std::size_t max_dim = kMaxDim);

ComplexMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j);
ComplexMatrix diagonal_matrix(std::span<const double> values);

// Column-stacking vectorization: vec(x)[i + j*n] = x(i, j).
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, std::size_t n);

/// Self-adjoint matrix checked against hermitian_tol at construction. The
/// stored matrix is the exact Hermitian part (a + a^*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix(const ComplexMatrix& a, const Tolerances& tol = {});

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  DensityMatrix(const ComplexMatrix& a, const Tolerances& tol = {});

  std::size_t dim() const { return h_.dim(); }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const HermitianMatrix& hermitian() const { return h_; }

 private:
  HermitianMatrix h_;
};

struct Spectrum {
  RealVector eigenvalues;     // non-increasing
  ComplexMatrix eigenvectors;  // orthonormal columns
};

Spectrum eig_hermitian(const HermitianMatrix& a);
RealVector eigenvalues_hermitian(const HermitianMatrix& a);

// Real function applied through the spectrum. Eigenvalues below `lower` by
// more than `slack` raise kDomainError; those within slack are clamped.
struct RealFunction {
  std::function<double(double)> f;
  double lower = -kInfinity;
  double upper = kInfinity;
  double slack = 0.0;
};

HermitianMatrix spectral_apply(const HermitianMatrix& a, const RealFunction& f);

struct Svd {
  RealVector singular_values;  // non-increasing
  ComplexMatrix u;
  ComplexMatrix v;
};

Svd svd(const ComplexMatrix& a);
RealVector singular_values(const ComplexMatrix& a);

// Schatten p-norm for p in [1, inf]; p = kInfinity is the operator norm.
double schatten_norm(const ComplexMatrix& a, double p);
double schatten_norm_from_singular_values(const RealVector& s, double p);
double operator_norm(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);

// Schatten-p subgradient at a: the unit-q-norm b with Re tr(b^* a) = ||a||_p.
ComplexMatrix schatten_dual_element(const ComplexMatrix& a, double p);

double conjugate_exponent(double p);

}  // namespace qds
