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

// Local-unitary invariants: power sums Tr(rho^alpha) of the reduced density
// operators for each cut, nested partial-trace invariants, and singular spectra.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "luequiv/linalg.hpp"
#include "luequiv/state.hpp"
#include "luequiv/types.hpp"

namespace luequiv {

/// Tr(rho_cut^alpha) for alpha = 1 .. max_order.
template <typename Real = double>
struct InvariantVector {
  Cut cut = Cut::A;
  int max_order = 0;
  std::vector<Real> values;

  Real operator[](int alpha) const { return values.at(static_cast<std::size_t>(alpha - 1)); }
};

/// Singular values of matricize(state, cut), descending, length min(rows, cols).
template <typename Real>
RVector<Real> singular_spectrum(const PureTripartiteState<Real>& state, Cut cut) {
  return singular_values(matricize(state, cut));
}

/// Power sums from the Schmidt coefficients: Tr(rho^alpha) = sum_i sigma_i^(2 alpha).
/// max_order <= 0 selects S = min{K, M, N}.
template <typename Real>
InvariantVector<Real> power_sum_invariants(const PureTripartiteState<Real>& state, Cut cut,
                                           int max_order = 0) {
  if (max_order <= 0) max_order = static_cast<int>(state.dims().min());
  const RVector<Real> sigma = singular_spectrum(state, cut);
  const RVector<Real> p = sigma.cwiseAbs2();
  InvariantVector<Real> out{cut, max_order, {}};
  out.values.reserve(static_cast<std::size_t>(max_order));
  RVector<Real> power = p;
  for (int alpha = 1; alpha <= max_order; ++alpha) {
    out.values.push_back(power.sum());
    power = power.cwiseProduct(p);
  }
  return out;
}

/// max_alpha |v_alpha - w_alpha| <= tol.
template <typename Real>
bool invariants_equal(const InvariantVector<Real>& v, const InvariantVector<Real>& w,
                      Real tol = Real(1e-9)) {
  if (v.cut != w.cut) throw std::invalid_argument("invariant vectors belong to different cuts");
  if (v.values.size() != w.values.size()) {
    throw std::invalid_argument("invariant vectors have different lengths");
  }
  for (std::size_t a = 0; a < v.values.size(); ++a) {
    if (std::abs(v.values[a] - w.values[a]) > tol) return false;
  }
  return true;
}

namespace detail {

/// Traces out one party of an operator on the ordered parties `dims`:
/// sum_x (I_L (x) <x| (x) I_R) rho (I_L (x) |x> (x) I_R).
template <typename Real>
CMatrix<Real> trace_out(const CMatrix<Real>& rho, const std::vector<Index>& dims,
                        std::size_t party) {
  Index left = 1;
  Index right = 1;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    if (p < party) left *= dims[p];
    if (p > party) right *= dims[p];
  }
  const Index d = dims[party];
  const CMatrix<Real> id_left = CMatrix<Real>::Identity(left, left);
  const CMatrix<Real> id_right = CMatrix<Real>::Identity(right, right);
  CMatrix<Real> out = CMatrix<Real>::Zero(left * right, left * right);
  for (Index x = 0; x < d; ++x) {
    CMatrix<Real> bra = CMatrix<Real>::Zero(1, d);
    bra(0, x) = Real(1);
    const CMatrix<Real> sel = kron(id_left, kron(bra, id_right));
    out += sel * rho * sel.adjoint();
  }
  return out;
}

template <typename Real>
CMatrix<Real> matrix_power(const CMatrix<Real>& m, int exponent) {
  CMatrix<Real> out = CMatrix<Real>::Identity(m.rows(), m.cols());
  for (int e = 0; e < exponent; ++e) out = out * m;
  return out;
}

}  // namespace detail

/// Tr( Tr_outer( (Tr_inner |psi><psi|)^alpha ) )^beta, where Tr_p discards
/// party p. Evaluated with dense partial traces of the full projector.
template <typename Real>
Real nested_invariant(const PureTripartiteState<Real>& state, Cut outer, Cut inner, int alpha,
                      int beta) {
  if (outer == inner) {
    throw std::invalid_argument("nested invariant needs two different traced parties");
  }
  const int s = static_cast<int>(state.dims().min());
  if (alpha < 1 || beta < 1 || alpha > s || beta > s) {
    throw std::invalid_argument("nested invariant orders must lie in [1, " + std::to_string(s) +
                                "]");
  }
  const Dims& d = state.dims();
  const CMatrix<Real> projector = state.amplitudes() * state.amplitudes().adjoint();

  std::vector<Index> parties{d.K, d.M, d.N};
  const CMatrix<Real> rho_pair =
      detail::trace_out(projector, parties, static_cast<std::size_t>(cut_index(inner)));
  parties.erase(parties.begin() + cut_index(inner));
  // Position of the outer party among the two that remain.
  const std::size_t outer_pos = cut_index(outer) < cut_index(inner)
                                    ? static_cast<std::size_t>(cut_index(outer))
                                    : static_cast<std::size_t>(cut_index(outer) - 1);
  const CMatrix<Real> rho_single =
      detail::trace_out<Real>(detail::matrix_power(rho_pair, alpha), parties, outer_pos);
  return detail::matrix_power(rho_single, beta).trace().real();
}

}  // namespace luequiv
