// Copyright 2026 The luequiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Realignment of block matrices, numerical rank, nearest Kronecker product,
// and the rank-one test for unitary Kronecker decomposability.

#include <cmath>
#include <stdexcept>
#include <string>

#include "luequiv/linalg.hpp"
#include "luequiv/types.hpp"

namespace luequiv {

/// Column-stacking vectorization.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> vec(
    const Eigen::MatrixBase<Derived>& a) {
  return a.reshaped();
}

/// Inverse of vec.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> unvec(
    const Eigen::MatrixBase<Derived>& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unvec: size mismatch");
  return v.reshaped(rows, cols);
}

/// Realignment of a matrix made of m1 x m2 blocks Z_ab, each n1 x n2:
/// row (b * m1 + a) of the result is vec(Z_ab)^t, so block columns are major.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> realign(
    const Eigen::MatrixBase<Derived>& z, Index m1, Index m2, Index n1, Index n2) {
  if (m1 <= 0 || m2 <= 0 || n1 <= 0 || n2 <= 0 || z.rows() != m1 * n1 ||
      z.cols() != m2 * n2) {
    throw std::invalid_argument("realign: " + std::to_string(z.rows()) + "x" +
                                std::to_string(z.cols()) + " is not a " + std::to_string(m1) +
                                "x" + std::to_string(m2) + " grid of " + std::to_string(n1) +
                                "x" + std::to_string(n2) + " blocks");
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m1 * m2, n1 * n2);
  for (Index b = 0; b < m2; ++b) {
    for (Index a = 0; a < m1; ++a) {
      out.row(b * m1 + a) = z.block(a * n1, b * n2, n1, n2).reshaped().transpose();
    }
  }
  return out;
}

/// Realignment of an (mn) x (mn) matrix viewed as m x m blocks of n x n.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> realign(
    const Eigen::MatrixBase<Derived>& z, Index m, Index n) {
  return realign(z, m, m, n, n);
}

/// Number of singular values above rel_tol * sigma_1. Zero matrix has rank 0.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& a, double rel_tol = 1e-8) {
  const auto sigma = singular_values(a);
  if (sigma.size() == 0 || !(sigma(0) > 0)) return 0;
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > rel_tol * sigma(0)) ++rank;
  }
  return rank;
}

/// Best Kronecker approximation X (x) Y of an (mn) x (mn) matrix, and when
/// decomposable, its rescaled unitary factors.
template <typename Real = double>
struct KronFactorization {
  CMatrix<Real> X;       ///< m x m, vec(X) = sqrt(s1) * u1
  CMatrix<Real> Y;       ///< n x n, vec(Y) = sqrt(s1) * conj(v1)
  CMatrix<Real> first;   ///< sqrt(k) X, set when decomposable
  CMatrix<Real> second;  ///< Y / sqrt(k), set when decomposable
  Real scale = Real(0);  ///< k, with X X^dag = k^-1 I
  Real defect = Real(1); ///< sigma_2 / sigma_1 of the realigned matrix
  Real residual = Real(0);  ///< ||U - X (x) Y||_F (or of the unitary factors)
  bool decomposable = false;
};

/// Nearest Kronecker product in Frobenius norm via the leading singular
/// triple of the realigned matrix.
template <typename Real>
KronFactorization<Real> kron_factorize(const CMatrix<Real>& u, Index m, Index n,
                                       Real rank1_tol = Real(1e-8)) {
  if (m <= 0 || n <= 0 || u.rows() != m * n || u.cols() != m * n) {
    throw std::invalid_argument("kron_factorize: expected a " + std::to_string(m * n) +
                                "x" + std::to_string(m * n) + " matrix, got " +
                                std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
  }
  const CMatrix<Real> r = realign(u, m, n);
  Eigen::JacobiSVD<CMatrix<Real>> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector<Real>& sigma = svd.singularValues();

  KronFactorization<Real> f;
  const Real s1 = sigma(0);
  const Real root = std::sqrt(s1);
  f.X = unvec(root * svd.matrixU().col(0), m, m);
  f.Y = unvec(root * svd.matrixV().col(0).conjugate(), n, n);
  if (s1 > Real(0)) {
    f.defect = sigma.size() > 1 ? sigma(1) / s1 : Real(0);
    f.scale = Real(m) / f.X.squaredNorm();
  }
  f.residual = (u - kron(f.X, f.Y)).norm();
  f.decomposable = s1 > Real(0) && f.defect <= rank1_tol;
  return f;
}

/// Decides whether a unitary is U1 (x) U2 with U1 (m x m), U2 (n x n) both
/// unitary. Throws NonUnitaryError when U itself is not unitary.
/// The scalar freedom (cU1) (x) (U2/c) is fixed by making the largest-magnitude
/// entry of U1 real and positive.
template <typename Real>
KronFactorization<Real> is_unitarily_decomposable(const CMatrix<Real>& u, Index m, Index n,
                                                  const Tolerances<Real>& tol = {}) {
  if (!is_unitary(u, tol.unitarity)) {
    throw NonUnitaryError("is_unitarily_decomposable: input is not unitary (defect " +
                          std::to_string(static_cast<double>(unitarity_defect(u))) + ")");
  }
  KronFactorization<Real> f = kron_factorize(u, m, n, tol.rank1);
  if (!f.decomposable) return f;

  // X X^dag = k^-1 I_m; the trace averages the diagonal.
  const Real k = Real(m) / (f.X * f.X.adjoint()).trace().real();
  f.scale = k;
  CMatrix<Real> first = std::sqrt(k) * f.X;
  CMatrix<Real> second = f.Y / std::sqrt(k);

  Index r = 0;
  Index c = 0;
  first.cwiseAbs().maxCoeff(&r, &c);
  const Complex<Real> pivot = first(r, c);
  if (std::abs(pivot) > Real(0)) {
    const Complex<Real> phase = pivot / std::abs(pivot);
    first /= phase;
    second *= phase;
  }

  f.residual = (u - kron(first, second)).norm();
  if (!is_unitary(first, tol.unitarity) || !is_unitary(second, tol.unitarity) ||
      f.residual > tol.recon) {
    f.decomposable = false;
    return f;
  }
  f.first = std::move(first);
  f.second = std::move(second);
  return f;
}

}  // namespace luequiv
