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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "luequiv/commands.hpp"
#include "luequiv/io.hpp"
#include "luequiv/luequiv.hpp"
#include "luequiv/report.hpp"
#include "oracles.hpp"

using namespace luequiv;
using State = PureTripartiteState<double>;
using Mat = CMatrix<double>;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string data(const char* name) { return std::string(LUEQUIV_DATA_DIR "/") + name; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct CheckRun {
  int status = -1;
  report::DecisionReport report;
};

CheckRun run_check(const std::string& first, const std::string& second) {
  cli::CheckArgs args;
  args.paths = {first, second};
  args.common.json = true;
  std::ostringstream out, err;
  CheckRun r;
  r.status = cli::cmd_check(args, out, err);
  r.report = nlohmann::json::parse(out.str()).get<report::DecisionReport>();
  return r;
}

/// Residual of the reported certificate, recomputed with explicit loops.
double certificate_residual(const State& s, const State& t, const report::Certificate& c) {
  return oracle::distance(oracle::amplitudes(t),
                          oracle::apply(oracle::amplitudes(s), s.dims(), c.U1, c.U2, c.U3));
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double invariant_gap(const State& s, const State& t) {
  double gap = 0.0;
  for (Cut cut : kAllCuts) {
    const auto v = power_sum_invariants(s, cut);
    const auto w = power_sum_invariants(t, cut);
    for (std::size_t a = 0; a < v.values.size(); ++a)
      gap = std::max(gap, std::abs(v.values[a] - w.values[a]));
  }
  return gap;
}

const Dims kTriples[] = {{2, 2, 2}, {2, 2, 3}, {2, 3, 4}, {3, 3, 3}};

Outcome golden_bell_pair() {
  const auto start = Clock::now();
  Outcome o;
  const auto s = io::read_state(data("bell_pair.txt")).state;
  const auto t = io::read_state(data("bell_pair_partner.txt")).state;

  Mat expected = Mat::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = 0.5;
  const double rho_err = max_abs(reduced_density(s, Cut::A) - expected);
  expected.setZero();
  expected(2, 2) = expected(3, 3) = 0.5;
  const double rho_err_t = max_abs(reduced_density(t, Cut::A) - expected);

  double inv_err = 0.0;
  for (const State* x : {&s, &t}) {
    const auto inv = power_sum_invariants(*x, Cut::A);
    for (int a = 1; a <= 2; ++a)
      inv_err = std::max(inv_err, std::abs(inv[a] - std::pow(0.5, a - 1)));
  }

  const CheckRun r = run_check(data("bell_pair.txt"), data("bell_pair_partner.txt"));
  const auto& rep = r.report;
  const bool verdict = r.status == 0 && rep.verdict == "EquivalentD1" && rep.certificate &&
                       rep.bridge && rep.residual;
  const double defect = rep.bridge ? rep.bridge->defect : 1.0;
  const double residual = rep.residual ? *rep.residual : 1.0;
  const double recheck = rep.certificate ? certificate_residual(s, t, *rep.certificate) : 1.0;
  const double elapsed = seconds_since(start);

  o.pass = rho_err <= 1e-12 && rho_err_t <= 1e-12 && inv_err <= 1e-12 && verdict &&
           defect <= 1e-10 && residual <= 1e-10 && recheck <= 1e-10 && elapsed < 1.0;
  o.detail = "verdict " + rep.verdict + ", rho err " + num(std::max(rho_err, rho_err_t)) +
             ", I err " + num(inv_err) + ", V defect " + num(defect) + ", residual " +
             num(residual) + " (recheck " + num(recheck) + "), " + num(elapsed) + " s";
  return o;
}

Outcome golden_qutrit_pair() {
  const auto start = Clock::now();
  Outcome o;
  const auto s = io::read_state(data("qutrit_pair.txt")).state;
  const auto t = io::read_state(data("qutrit_pair_partner.txt")).state;

  const double h = std::sqrt(2.0) / 2;
  const double r2 = std::sqrt(2.0) / 4, r3 = std::sqrt(3.0) / 4, r6 = std::sqrt(6.0) / 4;
  Mat a1 = Mat::Zero(2, 6);
  a1(0, 5) = h;
  a1(1, 3) = h;
  Mat a1p = Mat::Zero(2, 6);
  a1p(0, 0) = -r6;
  a1p(0, 3) = r2;
  a1p(1, 1) = -r3;
  a1p(1, 2) = r3;
  a1p(1, 4) = 0.25;
  a1p(1, 5) = -0.25;
  const bool exact = matricize(s, Cut::A) == a1 && matricize(t, Cut::A) == a1p;

  double inv_err = 0.0;
  for (const State* x : {&s, &t}) {
    const auto inv = power_sum_invariants(*x, Cut::A);
    for (int a = 1; a <= 2; ++a)
      inv_err = std::max(inv_err, std::abs(inv[a] - std::pow(0.5, a - 1)));
  }

  const auto v1 = io::read_matrix(data("qutrit_pair_bridge.txt")).matrix;
  const auto f = is_unitarily_decomposable(v1, 2, 3);

  const CheckRun r = run_check(data("qutrit_pair.txt"), data("qutrit_pair_partner.txt"));
  const auto& rep = r.report;
  const double residual = rep.residual ? *rep.residual : 1.0;
  const double recheck = rep.certificate ? certificate_residual(s, t, *rep.certificate) : 1.0;
  const double elapsed = seconds_since(start);

  o.pass = exact && inv_err <= 1e-12 && f.decomposable && f.defect <= 1e-10 &&
           r.status == 0 && rep.verdict == "EquivalentD1" && residual <= 1e-9 &&
           recheck <= 1e-9 && elapsed < 1.0;
  o.detail = std::string("A1/A1' ") + (exact ? "exact" : "MISMATCH") + ", I err " +
             num(inv_err) + ", printed V1 defect " + num(f.defect) + ", verdict " +
             rep.verdict + ", residual " + num(residual) + ", " + num(elapsed) + " s";
  return o;
}

Outcome lu_invariance() {
  Outcome o;
  double inv_gap = 0.0, matrix_gap = 0.0;
  int trials = 0;
  for (const Dims& d : kTriples) {
    for (std::uint64_t trial = 0; trial < 100; ++trial, ++trials) {
      const std::uint64_t seed = derive_seed(0xACCE57, trials);
      const State s = random_state(d, derive_seed(seed, 0));
      const Mat u1 = random_unitary(d.K, derive_seed(seed, 1));
      const Mat u2 = random_unitary(d.M, derive_seed(seed, 2));
      const Mat u3 = random_unitary(d.N, derive_seed(seed, 3));
      const State t = apply_local_unitaries(s, u1, u2, u3);
      inv_gap = std::max(inv_gap, invariant_gap(s, t));
      matrix_gap = std::max(
          matrix_gap,
          (matricize(t, Cut::A) - u1 * matricize(s, Cut::A) * kron(u2, u3).transpose()).norm());
    }
  }
  o.pass = inv_gap <= 1e-10 && matrix_gap <= 1e-10;
  o.detail = std::to_string(trials) + " trials, max invariant gap " + num(inv_gap) +
             ", max A1' residual " + num(matrix_gap);
  return o;
}

Outcome realignment() {
  Outcome o;
  std::mt19937_64 gen(2718);
  std::uniform_int_distribution<Index> dim(1, 4);
  std::normal_distribution<double> normal;
  auto gaussian = [&](Index n) {
    Mat m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = {normal(gen), normal(gen)};
    return m;
  };
  double outer_gap = 0.0, recovery = 0.0;
  bool all_decomposable = true;
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = dim(gen), n = dim(gen);
    const Mat x = gaussian(m), y = gaussian(n);
    outer_gap = std::max(outer_gap, max_abs(realign(kron(x, y), m, n) -
                                            vec(x) * vec(y).transpose()));
    const Mat a = random_unitary(m, derive_seed(31, 2 * trial));
    const Mat b = random_unitary(n, derive_seed(31, 2 * trial + 1));
    const Mat u = kron(a, b);
    const auto f = is_unitarily_decomposable(u, m, n);
    all_decomposable = all_decomposable && f.decomposable;
    if (f.decomposable) recovery = std::max(recovery, (u - kron(f.first, f.second)).norm());
  }
  Mat swap = Mat::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  const auto s = is_unitarily_decomposable(swap, 2, 2);
  o.pass = outer_gap <= 1e-13 && all_decomposable && recovery <= 1e-10 && !s.decomposable &&
           std::abs(s.defect - 1.0) <= 1e-12;
  o.detail = "realign gap " + num(outer_gap) + ", A(x)B recovery " + num(recovery) +
             (all_decomposable ? "" : " (some not decomposable)") + ", SWAP defect " +
             num(s.defect) + (s.decomposable ? " decomposable" : " not decomposable");
  return o;
}

Outcome completeness() {
  Outcome o;
  std::string per_triple;
  int trials = 0;
  bool ok = true;
  double worst = 0.0;
  for (const Dims& d : kTriples) {
    int equivalent = 0, differ = 0;
    for (int trial = 0; trial < 100; ++trial, ++trials) {
      const auto inst = cli::random_instance(d, 0xC0FFEE, trials, true);
      const auto dec = decide_equivalence(inst.state, *inst.partner);
      if (dec.verdict == Verdict::InvariantsDiffer) ++differ;
      if (!is_equivalent(dec.verdict)) continue;
      ++equivalent;
      const auto& f = *dec.local_factors;
      const double res = oracle::distance(
          oracle::amplitudes(*inst.partner),
          oracle::apply(oracle::amplitudes(inst.state), d, f.u1, f.u2, f.u3));
      worst = std::max(worst, res);
    }
    ok = ok && equivalent >= 99 && differ == 0;
    per_triple += (per_triple.empty() ? "" : ", ") + std::to_string(d.K) + "x" +
                  std::to_string(d.M) + "x" + std::to_string(d.N) + ": " +
                  std::to_string(equivalent) + "/100";
    if (differ) per_triple += " (" + std::to_string(differ) + " differ)";
  }
  o.pass = ok && worst <= 1e-9;
  o.detail = per_triple + ", worst recheck residual " + num(worst);
  return o;
}

Outcome inequivalence() {
  Outcome o;
  const CheckRun r = run_check(data("product_000.txt"), data("ghz.txt"));
  const auto& w = r.report.witness;
  const double h = std::sqrt(0.5);
  bool spectra = false;
  if (w && w->first.size() == 2 && w->second.size() == 2) {
    spectra = std::abs(w->first[0] - 1.0) <= 1e-12 && std::abs(w->first[1]) <= 1e-12 &&
              std::abs(w->second[0] - h) <= 1e-12 && std::abs(w->second[1] - h) <= 1e-12;
  }
  o.pass = r.status == 1 && r.report.verdict == "InvariantsDiffer" && w && w->cut == "A" &&
           spectra;
  o.detail = "exit " + std::to_string(r.status) + ", verdict " + r.report.verdict +
             (w ? ", cut " + w->cut : std::string()) +
             (spectra ? ", spectra (1, 0) vs (0.707, 0.707)" : ", spectra wrong");
  return o;
}

Outcome nested_oracle() {
  Outcome o;
  const auto s = io::read_state(data("bell_pair.txt")).state;
  const auto amps = oracle::amplitudes(s);
  double worst = 0.0;
  int count = 0;
  for (Cut outer : kAllCuts)
    for (Cut inner : kAllCuts) {
      if (outer == inner) continue;
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b, ++count) {
          const double expected =
              oracle::nested(amps, {2, 2, 2}, cut_index(outer), cut_index(inner), a, b);
          worst = std::max(worst, std::abs(nested_invariant(s, outer, inner, a, b) - expected));
        }
    }
  o.pass = count == 24 && worst <= 1e-12;
  o.detail = std::to_string(count) + " values, max deviation " + num(worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden 2x2x2 pair", golden_bell_pair},
      {"golden 2x2x3 pair", golden_qutrit_pair},
      {"LU invariance", lu_invariance},
      {"realignment and factorization", realignment},
      {"completeness on constructed pairs", completeness},
      {"inequivalence detection", inequivalence},
      {"nested invariant oracle", nested_oracle},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %-34s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
