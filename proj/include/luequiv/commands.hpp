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

// Subcommands of the luequiv tool. Each returns the process exit status.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "luequiv/equivalence.hpp"
#include "luequiv/state.hpp"

namespace luequiv::cli {

enum ExitCode : int {
  kEquivalent = 0,
  kInvariantsDiffer = 1,
  kInconclusive = 2,
  kUsage = 64,
  kDataError = 65,
  kNoInput = 66,
  kNonUnitary = 67,
};

struct CommonFlags {
  Tolerances<double> tol;
  bool json = false;
  bool strict = false;
};

struct InvariantsArgs {
  CommonFlags common;
  std::string path;
  int max_order = 0;  ///< 0 selects min{K, M, N}
  std::vector<std::array<int, 4>> nested;  ///< (outer, inner, alpha, beta), 1-based parties
};

struct CheckArgs {
  CommonFlags common;
  std::vector<std::string> paths;  ///< pairs: first, second, first, second, ...
  DecisionOptions options;
  unsigned jobs = 1;
  std::string report_path;  ///< optional copy of the report
};

struct FactorizeArgs {
  CommonFlags common;
  std::string path;
  long long m = 0;
  long long n = 0;
};

struct RandomArgs {
  std::array<long long, 3> dims{2, 2, 2};
  std::uint64_t seed = 0;
  int count = 1;
  bool lu_pair = false;
  std::string out_dir = ".";
  std::string prefix = "state";
};

int cmd_invariants(const InvariantsArgs& args, std::ostream& out, std::ostream& err);
int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_factorize(const FactorizeArgs& args, std::ostream& out, std::ostream& err);
int cmd_random(const RandomArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// One instance written by `random`: a state and, with --lu-pair, its
/// LU-transformed partner with the generating unitaries (U1, U2, U3).
struct RandomInstance {
  PureTripartiteState<double> state;
  std::optional<PureTripartiteState<double>> partner;
  std::array<CMatrix<double>, 3> unitaries;
};
RandomInstance random_instance(Dims dims, std::uint64_t seed, int index, bool lu_pair);

}  // namespace luequiv::cli
