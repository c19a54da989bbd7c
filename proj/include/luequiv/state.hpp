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

// Pure states on C^K (x) C^M (x) C^N, their bipartite matricizations and
// reduced density operators, and the action of local unitaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "luequiv/linalg.hpp"
#include "luequiv/types.hpp"

namespace luequiv {

enum class Normalization {
  Strict,   ///< reject states whose norm is off by more than the tolerance
  Lenient,  ///< rescale them and set renormalized()
};

/// Amplitudes a_{ijk} of a normalized tripartite pure state, stored 0-based
/// and row-major: flat index (i * M + j) * N + k.
template <typename Real = double>
class PureTripartiteState {
 public:
  using Scalar = Complex<Real>;

  static PureTripartiteState from_amplitudes(Dims dims, CVector<Real> amplitudes,
                                             Normalization policy = Normalization::Lenient,
                                             Real norm_tol = Real(1e-12)) {
    if (dims.K <= 0 || dims.M <= 0 || dims.N <= 0) {
      throw std::invalid_argument("state dimensions must be positive");
    }
    if (amplitudes.size() != dims.total()) {
      throw std::invalid_argument("amplitude count " + std::to_string(amplitudes.size()) +
                                  " does not match K*M*N = " +
                                  std::to_string(dims.total()));
    }
    const Real norm2 = amplitudes.squaredNorm();
    if (!(norm2 > Real(0))) throw std::invalid_argument("zero state");
    if (!std::isfinite(norm2)) throw std::invalid_argument("non-finite amplitude");
    bool renormalized = false;
    if (std::abs(norm2 - Real(1)) > norm_tol) {
      if (policy == Normalization::Strict) {
        throw std::invalid_argument("state norm^2 = " + std::to_string(norm2) +
                                    " differs from 1 beyond tolerance");
      }
      amplitudes /= std::sqrt(norm2);
      renormalized = true;
    }
    return PureTripartiteState(dims, std::move(amplitudes), renormalized);
  }

  const Dims& dims() const { return dims_; }
  const CVector<Real>& amplitudes() const { return amplitudes_; }
  bool renormalized() const { return renormalized_; }

  Scalar operator()(Index i, Index j, Index k) const {
    return amplitudes_(flat_index(dims_, i, j, k));
  }

  detail::Shape3 shape() const { return {dims_.K, dims_.M, dims_.N}; }

  static Index flat_index(const Dims& d, Index i, Index j, Index k) {
    return (i * d.M + j) * d.N + k;
  }

 private:
  PureTripartiteState(Dims dims, CVector<Real> amplitudes, bool renormalized)
      : dims_(dims), amplitudes_(std::move(amplitudes)), renormalized_(renormalized) {}

  Dims dims_;
  CVector<Real> amplitudes_;
  bool renormalized_ = false;
};

/// Bipartite coefficient matrix for a cut. Rows index the cut party; columns
/// index the remaining pair, earlier party major:
///   A: (i, j*N + k),  B: (j, i*N + k),  C: (k, i*M + j).
template <typename Real>
CMatrix<Real> matricize(const PureTripartiteState<Real>& state, Cut cut) {
  const Dims& d = state.dims();
  const auto [m, n] = d.complement(cut);
  CMatrix<Real> out(d.row_dim(cut), m * n);
  for (Index i = 0; i < d.K; ++i) {
    for (Index j = 0; j < d.M; ++j) {
      for (Index k = 0; k < d.N; ++k) {
        const auto v = state(i, j, k);
        switch (cut) {
          case Cut::A:
            out(i, j * d.N + k) = v;
            break;
          case Cut::B:
            out(j, i * d.N + k) = v;
            break;
          case Cut::C:
            out(k, i * d.M + j) = v;
            break;
        }
      }
    }
  }
  return out;
}

/// Partial trace of |psi><psi| over the cut party: A^t A^*, an operator on
/// the two remaining parties.
template <typename Real>
CMatrix<Real> reduced_density(const PureTripartiteState<Real>& state, Cut cut) {
  const CMatrix<Real> a = matricize(state, cut);
  return a.transpose() * a.conjugate();
}

/// (U1 (x) U2 (x) U3)|psi>. Each factor must be unitary of matching size.
template <typename Real>
PureTripartiteState<Real> apply_local_unitaries(const PureTripartiteState<Real>& state,
                                                const CMatrix<Real>& u1,
                                                const CMatrix<Real>& u2,
                                                const CMatrix<Real>& u3,
                                                Real unitarity_tol = Real(1e-10)) {
  const Dims& d = state.dims();
  const std::array<const CMatrix<Real>*, 3> us{&u1, &u2, &u3};
  for (int p = 0; p < 3; ++p) {
    const auto& u = *us[p];
    if (u.rows() != d[p] || u.cols() != d[p]) {
      throw std::invalid_argument("local unitary " + std::to_string(p + 1) + " is " +
                                  std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                                  ", subsystem dimension is " + std::to_string(d[p]));
    }
    if (!is_unitary(u, unitarity_tol)) {
      throw NonUnitaryError("local factor " + std::to_string(p + 1) + " is not unitary");
    }
  }
  CVector<Real> t = state.amplitudes();
  for (int p = 0; p < 3; ++p) t = detail::mode_product(t, state.shape(), *us[p], p);
  return PureTripartiteState<Real>::from_amplitudes(d, std::move(t), Normalization::Lenient,
                                                    Real(1e-12));
}

/// i.i.d. complex Gaussian amplitudes, normalized. Deterministic per seed.
template <typename Real = double>
PureTripartiteState<Real> random_state(Dims dims, std::uint64_t seed) {
  if (dims.K <= 0 || dims.M <= 0 || dims.N <= 0) {
    throw std::invalid_argument("state dimensions must be positive");
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<Real> normal(Real(0), Real(1));
  CVector<Real> amps(dims.total());
  for (Index n = 0; n < amps.size(); ++n) {
    const Real re = normal(gen);
    const Real im = normal(gen);
    amps(n) = Complex<Real>(re, im);
  }
  amps.normalize();
  return PureTripartiteState<Real>::from_amplitudes(dims, std::move(amps));
}

/// n x n Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// diagonal phases of R absorbed into Q.
template <typename Real = double>
CMatrix<Real> random_unitary(Index n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("unitary size must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<Real> normal(Real(0), Real(1));
  CMatrix<Real> z(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const Real re = normal(gen);
      const Real im = normal(gen);
      z(i, j) = Complex<Real>(re, im);
    }
  }
  Eigen::HouseholderQR<CMatrix<Real>> qr(z);
  CMatrix<Real> q = qr.householderQ();
  for (Index j = 0; j < n; ++j) {
    const Complex<Real> r = qr.matrixQR()(j, j);
    const Real mag = std::abs(r);
    if (mag > Real(0)) q.col(j) *= r / mag;
  }
  return q;
}

}  // namespace luequiv
