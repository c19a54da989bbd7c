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

#include <doctest.h>

#include <cmath>

#include "luequiv/luequiv.hpp"
#include "oracles.hpp"

using namespace luequiv;
using State = PureTripartiteState<double>;

namespace {

State basis_sum(Dims d, std::initializer_list<std::array<Index, 3>> kets) {
  CVector<double> amps = CVector<double>::Zero(d.total());
  for (const auto& k : kets) amps(State::flat_index(d, k[0], k[1], k[2])) = 1.0;
  return State::from_amplitudes(d, amps);
}

}  // namespace

TEST_CASE("power sums of the Bell-type pair halve with each order") {
  const State psi = basis_sum({2, 2, 2}, {{0, 0, 1}, {1, 0, 0}});
  const State partner = basis_sum({2, 2, 2}, {{0, 1, 0}, {1, 1, 1}});
  for (const State* s : {&psi, &partner}) {
    const auto inv = power_sum_invariants(*s, Cut::A);
    REQUIRE(inv.values.size() == 2);
    CHECK(std::abs(inv[1] - 1.0) <= 1e-12);
    CHECK(std::abs(inv[2] - 0.5) <= 1e-12);
  }
}

TEST_CASE("power sums of the 2x2x3 pair") {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
  const State q = basis_sum({2, 2, 3}, {{1, 1, 0}, {0, 1, 2}});
  CVector<double> amps = CVector<double>::Zero(12);
  const Dims d{2, 2, 3};
  amps(State::flat_index(d, 0, 0, 0)) = -r6 / 4;
  amps(State::flat_index(d, 0, 1, 0)) = r2 / 4;
  amps(State::flat_index(d, 1, 0, 1)) = -r3 / 4;
  amps(State::flat_index(d, 1, 0, 2)) = r3 / 4;
  amps(State::flat_index(d, 1, 1, 1)) = 0.25;
  amps(State::flat_index(d, 1, 1, 2)) = -0.25;
  const State partner = State::from_amplitudes(d, amps, Normalization::Strict);
  for (const State* s : {&q, &partner}) {
    const auto inv = power_sum_invariants(*s, Cut::A);
    CHECK(std::abs(inv[1] - 1.0) <= 1e-12);
    CHECK(std::abs(inv[2] - 0.5) <= 1e-12);
  }
}

TEST_CASE("product states have unit power sums") {
  const State product = basis_sum({2, 3, 4}, {{1, 2, 3}});
  for (Cut cut : kAllCuts) {
    for (double v : power_sum_invariants(product, cut).values) CHECK(std::abs(v - 1.0) <= 1e-14);
  }
}

TEST_CASE("power sums are invariant under local unitaries") {
  const Dims triples[] = {{2, 2, 2}, {2, 2, 3}, {2, 3, 4}, {3, 3, 3}};
  std::uint64_t seed = 500;
  for (const Dims& d : triples) {
    for (int trial = 0; trial < 25; ++trial, seed += 4) {
      const State s = random_state(d, seed);
      const State t = apply_local_unitaries(s, random_unitary(d.K, seed + 1),
                                            random_unitary(d.M, seed + 2),
                                            random_unitary(d.N, seed + 3));
      for (Cut cut : kAllCuts) {
        const auto v = power_sum_invariants(s, cut);
        const auto w = power_sum_invariants(t, cut);
        CHECK(v.values.size() == static_cast<std::size_t>(d.min()));
        CHECK(invariants_equal(v, w, 1e-10));
        CHECK(std::abs(v[1] - 1.0) <= 1e-12);
        for (int a = 2; a <= v.max_order; ++a) CHECK(v[a] <= v[a - 1] + 1e-15);
      }
    }
  }
}

TEST_CASE("invariants_equal requires comparable vectors") {
  const State s = random_state({2, 3, 3}, 9);
  const auto a = power_sum_invariants(s, Cut::A);
  CHECK_THROWS_AS(invariants_equal(a, power_sum_invariants(s, Cut::B)), std::invalid_argument);
  CHECK_THROWS_AS(invariants_equal(a, power_sum_invariants(s, Cut::A, 1)), std::invalid_argument);
  const State other = random_state({2, 3, 3}, 10);
  CHECK_FALSE(invariants_equal(a, power_sum_invariants(other, Cut::A)));
}

TEST_CASE("nested invariants of the Bell-type state") {
  const State psi = basis_sum({2, 2, 2}, {{0, 0, 1}, {1, 0, 0}});
  struct Row {
    Cut outer, inner;
    double v11, v12, v21, v22;
  };
  // Frozen from a brute-force evaluation; (alpha, beta) columns.
  const Row table[] = {
      {Cut::A, Cut::B, 1, 0.5, 1, 0.5},     {Cut::A, Cut::C, 1, 1, 0.5, 0.25},
      {Cut::B, Cut::A, 1, 0.5, 0.5, 0.125}, {Cut::B, Cut::C, 1, 0.5, 0.5, 0.125},
      {Cut::C, Cut::A, 1, 1, 0.5, 0.25},    {Cut::C, Cut::B, 1, 0.5, 1, 0.5},
  };
  for (const Row& r : table) {
    CHECK(std::abs(nested_invariant(psi, r.outer, r.inner, 1, 1) - r.v11) <= 1e-12);
    CHECK(std::abs(nested_invariant(psi, r.outer, r.inner, 1, 2) - r.v12) <= 1e-12);
    CHECK(std::abs(nested_invariant(psi, r.outer, r.inner, 2, 1) - r.v21) <= 1e-12);
    CHECK(std::abs(nested_invariant(psi, r.outer, r.inner, 2, 2) - r.v22) <= 1e-12);
  }
}

TEST_CASE("nested invariants agree with the projector oracle") {
  for (const Dims& d : {Dims{2, 2, 2}, Dims{2, 2, 3}, Dims{2, 3, 3}}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const State s = random_state(d, 40 + seed);
      const auto amps = oracle::amplitudes(s);
      const int lim = static_cast<int>(d.min());
      for (Cut outer : kAllCuts)
        for (Cut inner : kAllCuts) {
          if (outer == inner) continue;
          for (int a = 1; a <= lim; ++a)
            for (int b = 1; b <= lim; ++b) {
              const double expected =
                  oracle::nested(amps, {static_cast<int>(d.K), static_cast<int>(d.M),
                                        static_cast<int>(d.N)},
                                 cut_index(outer), cut_index(inner), a, b);
              CHECK(std::abs(nested_invariant(s, outer, inner, a, b) - expected) <= 1e-12);
            }
        }
    }
  }
}

TEST_CASE("nested invariants are LU invariant and validate arguments") {
  const State s = random_state({2, 2, 3}, 77);
  const State t = apply_local_unitaries(s, random_unitary(2, 1), random_unitary(2, 2),
                                        random_unitary(3, 3));
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      CHECK(std::abs(nested_invariant(s, Cut::B, Cut::C, a, b) -
                     nested_invariant(t, Cut::B, Cut::C, a, b)) <= 1e-12);
  CHECK(std::abs(nested_invariant(s, Cut::A, Cut::C, 1, 1) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(nested_invariant(s, Cut::A, Cut::A, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(nested_invariant(s, Cut::A, Cut::B, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(nested_invariant(s, Cut::A, Cut::B, 1, 3), std::invalid_argument);
}
