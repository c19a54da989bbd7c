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

#include "luequiv/io.hpp"
#include "luequiv/report.hpp"

using namespace luequiv;
using io::ParseError;

TEST_CASE("parse_state reads records with 1-based indices") {
  const auto f = io::parse_state(
      "# two terms\n"
      "label Bell pair\n"
      "dims 2 2 2\n"
      "1 1 2 0.70710678118654757 0\n"
      "2 1 1 0.70710678118654757 0   # trailing comment\n");
  CHECK(f.label == "Bell pair");
  CHECK(f.state.dims() == Dims{2, 2, 2});
  CHECK(f.state(0, 0, 1).real() == 0.70710678118654757);
  CHECK(f.state(1, 0, 0).real() == 0.70710678118654757);
  CHECK(f.state(1, 1, 1) == Complex<double>(0.0));
  CHECK_FALSE(f.state.renormalized());
}

TEST_CASE("parse_state diagnostics") {
  CHECK_THROWS_WITH_AS(io::parse_state("dims 2 2 2\n", Normalization::Lenient, "s.txt"),
                       "s.txt: zero state", ParseError);
  CHECK_THROWS_WITH_AS(io::parse_state("dims 2 2 2\n3 1 1 1 0\n", Normalization::Lenient, "s"),
                       "s:2: record 3 1 1 1 0: i = 3 out of range [1, 2]", ParseError);
  CHECK_THROWS_WITH_AS(io::parse_state("dims 2 2 2\n1 1 1 1 0\n1 1 1 0 1\n"),
                       "<input>:3: duplicate amplitude for (1, 1, 1)", ParseError);
  CHECK_THROWS_WITH_AS(io::parse_state("1 1 1 1 0\n"),
                       "<input>:1: amplitude record before dims line", ParseError);
  CHECK_THROWS_WITH_AS(io::parse_state("label x\n"), "<input>: missing dims line", ParseError);
  CHECK_THROWS_WITH_AS(io::parse_state("dims 2 2 2\n1 1 1 abc 0\n"),
                       "<input>:2: field re: expected a finite number, got 'abc'", ParseError);
  CHECK_THROWS_WITH_AS(io::parse_state("dims 2 2\n"),
                       "<input>:1: dims needs three dimensions K M N", ParseError);
  CHECK_THROWS_AS(io::parse_state("dims 2 2 2\n1 1 1 1 0 7\n"), ParseError);
  CHECK_THROWS_AS(io::parse_state("dims 0 2 2\n"), ParseError);
  CHECK_THROWS_AS(io::parse_state("dims 1 1 1\n1 1 1 2 0\n", Normalization::Strict), ParseError);
  CHECK(io::parse_state("dims 1 1 1\n1 1 1 2 0\n").state.renormalized());
}

TEST_CASE("state files round-trip exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_state({2, 3, 4}, seed);
    const auto back = io::parse_state(io::serialize_state(s, "r"), Normalization::Strict);
    CHECK(back.label == "r");
    CHECK(back.state.amplitudes() == s.amplitudes());
  }
  const auto f = io::read_state(LUEQUIV_DATA_DIR "/qutrit_pair_partner.txt");
  CHECK(io::parse_state(io::serialize_state(f.state)).state.amplitudes() ==
        f.state.amplitudes());
}

TEST_CASE("format_double keeps 17 significant digits") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 0.70710678118654757, 0.0}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("matrix files") {
  const auto swap = io::read_matrix(LUEQUIV_DATA_DIR "/swap.txt");
  CHECK(swap.matrix.rows() == 4);
  CHECK(swap.matrix(1, 2) == Complex<double>(1.0));
  CHECK(swap.matrix(1, 1) == Complex<double>(0.0));

  const auto u = random_unitary(3, 4);
  CHECK(io::parse_matrix(io::serialize_matrix(u, "u")).matrix == u);

  CHECK_THROWS_AS(io::parse_matrix("shape 2 2\n1 3 1 0\n"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix("shape 2 2\n1 1 1 0\n1 1 1 0\n"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix("1 1 1 0\n"), ParseError);
  CHECK_THROWS_AS(io::read_matrix("/nonexistent/file.txt"), io::FileError);
}

TEST_CASE("decision reports round-trip through JSON") {
  const auto s = io::read_state(LUEQUIV_DATA_DIR "/bell_pair.txt");
  const auto t = io::read_state(LUEQUIV_DATA_DIR "/bell_pair_partner.txt");
  const auto d = decide_equivalence(s.state, t.state);

  report::DecisionReport r;
  r.command = "check";
  r.dims = {2, 2, 2};
  r.labels = {s.label, t.label};
  r.invariants = {report::invariant_table(s.state), report::invariant_table(t.state)};
  r.nested.push_back({1, 2, 2, 2, nested_invariant(s.state, Cut::A, Cut::B, 2, 2)});
  r.tolerances = report::tolerances_used({});
  report::fill_decision(r, d);
  r.elapsed_ms = 1.5;

  CHECK(r.verdict == "EquivalentD1");
  CHECK(r.exit_status == 0);
  REQUIRE(r.certificate);

  const nlohmann::json j = r;
  CHECK(j.at("schema") == report::kSchema);
  CHECK(j.at("invariants").at(0).at("A").size() == 2);
  const auto back = j.get<report::DecisionReport>();
  CHECK(back.same_content(r));
  CHECK(nlohmann::json(back) == j);

  nlohmann::json bad = j;
  bad["schema"] = "other/2";
  CHECK_THROWS_AS(bad.get<report::DecisionReport>(), std::invalid_argument);
}

TEST_CASE("exit status is a function of the verdict") {
  CHECK(report::exit_status(Verdict::EquivalentD1) == 0);
  CHECK(report::exit_status(Verdict::EquivalentD2) == 0);
  CHECK(report::exit_status(Verdict::EquivalentD3) == 0);
  CHECK(report::exit_status(Verdict::InvariantsDiffer) == 1);
  CHECK(report::exit_status(Verdict::Inconclusive) == 2);
}
