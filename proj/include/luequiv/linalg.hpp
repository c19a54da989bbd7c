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

// Small dense helpers shared by the modules.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <limits>

#include "luequiv/types.hpp"

namespace luequiv {

/// Kronecker product A (x) B.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// max_{ij} |(U U^dag - I)_{ij}|; infinity for non-square input.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real unitarity_defect(
    const Eigen::MatrixBase<Derived>& u) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (u.rows() != u.cols() || u.rows() == 0) {
    return std::numeric_limits<Real>::infinity();
  }
  const auto id = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic,
                                Eigen::Dynamic>::Identity(u.rows(), u.cols());
  return (u * u.adjoint() - id).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u,
                typename Eigen::NumTraits<typename Derived::Scalar>::Real tol) {
  return unitarity_defect(u) <= tol;
}

/// Unitary factor W of the polar decomposition M = W P; the solution of
/// min_W ||M - W||_F over unitaries. Square input only.
template <typename Real>
CMatrix<Real> polar_unitary(const CMatrix<Real>& m) {
  Eigen::JacobiSVD<CMatrix<Real>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// Singular values in descending order (Eigen already sorts them).
template <typename Derived>
RVector<typename Eigen::NumTraits<typename Derived::Scalar>::Real> singular_values(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(a.eval());
  return svd.singularValues();
}

/// Eigenvectors of a Hermitian matrix, columns ordered by descending eigenvalue.
template <typename Real>
CMatrix<Real> descending_eigenvectors(const CMatrix<Real>& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> eig(h);
  return eig.eigenvectors().rowwise().reverse();
}

/// Deterministic per-stream seed derivation (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

// Flat row-major storage t[a][b][c] of a 3-tensor with the given shape.
using Shape3 = std::array<Index, 3>;

inline Index flat3(const Shape3& s, Index a, Index b, Index c) {
  return (a * s[1] + b) * s[2] + c;
}

/// Mode unfolding: rows index the chosen mode, columns the remaining two in
/// their original order with the later one minor.
template <typename Real>
CMatrix<Real> unfold(const CVector<Real>& t, const Shape3& s, int mode) {
  const Index rows = s[mode];
  CMatrix<Real> out(rows, t.size() / rows);
  for (Index a = 0; a < s[0]; ++a) {
    for (Index b = 0; b < s[1]; ++b) {
      for (Index c = 0; c < s[2]; ++c) {
        const Complex<Real> v = t(flat3(s, a, b, c));
        switch (mode) {
          case 0:
            out(a, b * s[2] + c) = v;
            break;
          case 1:
            out(b, a * s[2] + c) = v;
            break;
          default:
            out(c, a * s[1] + b) = v;
            break;
        }
      }
    }
  }
  return out;
}

template <typename Real>
CVector<Real> fold(const CMatrix<Real>& m, const Shape3& s, int mode) {
  CVector<Real> t(s[0] * s[1] * s[2]);
  for (Index a = 0; a < s[0]; ++a) {
    for (Index b = 0; b < s[1]; ++b) {
      for (Index c = 0; c < s[2]; ++c) {
        Complex<Real>& v = t(flat3(s, a, b, c));
        switch (mode) {
          case 0:
            v = m(a, b * s[2] + c);
            break;
          case 1:
            v = m(b, a * s[2] + c);
            break;
          default:
            v = m(c, a * s[1] + b);
            break;
        }
      }
    }
  }
  return t;
}

/// Applies g to one leg of the tensor: t <- (.. (x) g (x) ..) t.
template <typename Real>
CVector<Real> mode_product(const CVector<Real>& t, const Shape3& s, const CMatrix<Real>& g,
                           int mode) {
  return fold<Real>(g * unfold(t, s, mode), s, mode);
}

}  // namespace detail

}  // namespace luequiv
