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

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace luequiv {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Selects one of the three bipartitions A|BC, B|AC, C|AB.
enum class Cut { A = 0, B = 1, C = 2 };

inline constexpr std::array<Cut, 3> kAllCuts{Cut::A, Cut::B, Cut::C};

inline constexpr int cut_index(Cut c) { return static_cast<int>(c); }

inline constexpr std::string_view cut_name(Cut c) {
  switch (c) {
    case Cut::A:
      return "A";
    case Cut::B:
      return "B";
    case Cut::C:
      return "C";
  }
  return "?";
}

inline Cut cut_from_char(char c) {
  switch (c) {
    case 'A':
    case 'a':
    case '1':
      return Cut::A;
    case 'B':
    case 'b':
    case '2':
      return Cut::B;
    case 'C':
    case 'c':
    case '3':
      return Cut::C;
    default:
      throw std::invalid_argument(std::string("unknown cut '") + c + "'");
  }
}

/// Local dimensions (K, M, N) of the three subsystems.
struct Dims {
  Index K = 1;
  Index M = 1;
  Index N = 1;

  constexpr Index total() const { return K * M * N; }
  constexpr Index operator[](int party) const {
    return party == 0 ? K : (party == 1 ? M : N);
  }
  constexpr Index min() const {
    return K < M ? (K < N ? K : N) : (M < N ? M : N);
  }
  /// Dimension of the party selected by the cut.
  constexpr Index row_dim(Cut c) const { return (*this)[cut_index(c)]; }
  /// Dimensions of the two complementary parties, in subsystem order.
  constexpr std::array<Index, 2> complement(Cut c) const {
    switch (c) {
      case Cut::A:
        return {M, N};
      case Cut::B:
        return {K, N};
      case Cut::C:
        return {K, M};
    }
    return {0, 0};
  }
  bool operator==(const Dims&) const = default;
};

/// Numerical thresholds shared by the whole library.
template <typename Real>
struct Tolerances {
  Real norm = Real(1e-12);        ///< |<psi|psi> - 1|
  Real unitarity = Real(1e-10);   ///< max-entry deviation of U U^dag - I
  Real spectrum = Real(1e-9);     ///< max deviation between singular spectra
  Real recon = Real(1e-9);        ///< Frobenius residual of a certificate
  Real rank1 = Real(1e-8);        ///< sigma_2 / sigma_1 of a realignment
  Real invariant = Real(1e-9);    ///< max deviation between power sums
};

/// A matrix that was required to be unitary is not.
class NonUnitaryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bipartite certificate could not be verified even though the spectra
/// agree; distinct from a proof of inequivalence.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace luequiv
