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

// Structured reports emitted by the CLI (schema "luequiv.report/1").
//
// Complex matrices are arrays of rows, each row an array of [re, im] pairs.
// Indices in reports (spectrum_index, nested parties) are 1-based.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "luequiv/equivalence.hpp"
#include "luequiv/io.hpp"

namespace luequiv::report {

inline constexpr const char* kSchema = "luequiv.report/1";

struct Attempt {
  std::string cut;
  double raw_defect = 1.0;
  double defect = 1.0;
  double bridge_residual = 0.0;
  int gauge_sweeps = 0;
  bool operator==(const Attempt&) const = default;
};

struct Witness {
  std::string cut;
  long long spectrum_index = 0;
  int order = 0;
  double deviation = 0.0;
  std::vector<double> first;
  std::vector<double> second;
  bool operator==(const Witness&) const = default;
};

struct BridgeInfo {
  std::string cut;
  io::Matrix U;
  io::Matrix V;
  double defect = 1.0;
  double residual = 0.0;
  bool operator==(const BridgeInfo& other) const;
};

struct Certificate {
  io::Matrix U1;
  io::Matrix U2;
  io::Matrix U3;
  bool operator==(const Certificate& other) const;
};

struct Nested {
  int outer = 1;  ///< traced second, 1-based party
  int inner = 1;  ///< traced first, 1-based party
  int alpha = 1;
  int beta = 1;
  double value = 0.0;
  bool operator==(const Nested&) const = default;
};

struct Factorization {
  long long m = 0;
  long long n = 0;
  bool decomposable = false;
  double defect = 1.0;
  double scale = 0.0;
  double residual = 0.0;
  io::Matrix first;
  io::Matrix second;
  bool operator==(const Factorization& other) const;
};

/// Tolerances used, echoed into every report.
struct TolerancesUsed {
  double norm = 0;
  double unitarity = 0;
  double spectrum = 0;
  double recon = 0;
  double rank1 = 0;
  double invariant = 0;
  bool operator==(const TolerancesUsed&) const = default;
};

/// Per-state invariant vectors, keyed by cut name "A", "B", "C".
using InvariantTable = std::map<std::string, std::vector<double>>;

struct DecisionReport {
  std::string schema = kSchema;
  std::string command;
  std::string verdict;  ///< empty for commands without a verdict
  int exit_status = 0;
  std::vector<long long> dims;
  std::vector<std::string> labels;
  std::vector<InvariantTable> invariants;
  std::vector<Nested> nested;
  std::vector<Attempt> attempts;
  std::optional<Witness> witness;
  std::optional<Certificate> certificate;
  std::optional<BridgeInfo> bridge;
  std::optional<Factorization> factorization;
  std::optional<double> residual;
  TolerancesUsed tolerances;
  double elapsed_ms = 0.0;

  /// Equality of everything except timing.
  bool same_content(const DecisionReport& other) const;
};

nlohmann::json matrix_to_json(const io::Matrix& m);
io::Matrix matrix_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const DecisionReport& r);
void from_json(const nlohmann::json& j, DecisionReport& r);

TolerancesUsed tolerances_used(const Tolerances<double>& tol);
InvariantTable invariant_table(const io::State& state);

/// Fills verdict, attempts, witness, certificate, bridge and residual.
void fill_decision(DecisionReport& r, const TripartiteDecision<double>& decision);

/// Exit status for a verdict: 0 equivalent, 1 invariants differ, 2 inconclusive.
int exit_status(Verdict v);

}  // namespace luequiv::report
