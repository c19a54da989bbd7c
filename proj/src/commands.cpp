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

#include "luequiv/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "luequiv/io.hpp"
#include "luequiv/report.hpp"

namespace luequiv::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Normalization policy_of(const CommonFlags& f) {
  return f.strict ? Normalization::Strict : Normalization::Lenient;
}

/// Maps input failures to exit codes, printing the diagnostic.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const io::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kNoInput;
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const NonUnitaryError& e) {
    err << "error: " << e.what() << '\n';
    return kNonUnitary;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

io::StateFile load_state(const std::string& path, const CommonFlags& flags, std::ostream& err) {
  io::StateFile f = io::read_state(path, policy_of(flags));
  if (f.state.renormalized()) {
    err << "warning: " << path << ": state was not normalized; rescaled to unit norm\n";
  }
  if (f.label.empty()) f.label = std::filesystem::path(path).filename().string();
  return f;
}

std::vector<long long> dims_list(const Dims& d) { return {d.K, d.M, d.N}; }

std::string fmt(double v) { return io::format_double(v); }

void print_values(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << fmt(values[i]);
}

void print_matrix(std::ostream& out, const std::string& name, const io::Matrix& m) {
  out << "  " << name << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (Index r = 0; r < m.rows(); ++r) {
    out << "   ";
    for (Index c = 0; c < m.cols(); ++c) {
      std::ostringstream z;
      z << std::setprecision(6) << std::showpos << m(r, c).real() << m(r, c).imag() << 'i';
      out << ' ' << std::setw(22) << z.str();
    }
    out << '\n';
  }
}

const char* family_name(Cut c) {
  switch (c) {
    case Cut::A:
      return "I";
    case Cut::B:
      return "J";
    case Cut::C:
      return "K";
  }
  return "?";
}

report::InvariantTable invariant_table(const io::State& state, int max_order) {
  report::InvariantTable table;
  for (Cut cut : kAllCuts) {
    table[std::string(cut_name(cut))] = power_sum_invariants(state, cut, max_order).values;
  }
  return table;
}

void print_decision_text(std::ostream& out, const report::DecisionReport& r) {
  out << "states: " << r.labels.at(0) << " vs " << r.labels.at(1) << "  dims";
  for (auto d : r.dims) out << ' ' << d;
  out << '\n';
  const char* who[2] = {"first ", "second"};
  for (std::size_t s = 0; s < r.invariants.size(); ++s) {
    for (const auto& [cut, values] : r.invariants[s]) {
      out << "  " << who[s] << " " << family_name(cut_from_char(cut[0])) << " (cut " << cut
          << "): ";
      print_values(out, values);
      out << '\n';
    }
  }
  out << "verdict: " << r.verdict << '\n';
  if (r.witness) {
    out << "  witness: cut " << r.witness->cut << ", singular value #"
        << r.witness->spectrum_index << " differs by " << fmt(r.witness->deviation);
    if (r.witness->order > 0) out << ", power sums differ from order " << r.witness->order;
    out << "\n  spectrum first:  ";
    print_values(out, r.witness->first);
    out << "\n  spectrum second: ";
    print_values(out, r.witness->second);
    out << '\n';
  }
  for (const auto& a : r.attempts) {
    out << "  attempt D" << (cut_index(cut_from_char(a.cut[0])) + 1) << ": raw defect "
        << fmt(a.raw_defect) << ", final defect " << fmt(a.defect) << ", bridge residual "
        << fmt(a.bridge_residual) << ", gauge sweeps " << a.gauge_sweeps << '\n';
  }
  if (r.residual) out << "  state residual: " << fmt(*r.residual) << '\n';
  if (r.certificate) {
    print_matrix(out, "U1", r.certificate->U1);
    print_matrix(out, "U2", r.certificate->U2);
    print_matrix(out, "U3", r.certificate->U3);
  }
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace

int cmd_invariants(const InvariantsArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = Clock::now();
    const io::StateFile f = load_state(args.path, args.common, err);
    report::DecisionReport r;
    r.command = "invariants";
    r.dims = dims_list(f.state.dims());
    r.labels = {f.label};
    r.invariants = {invariant_table(f.state, args.max_order)};
    for (const auto& q : args.nested) {
      if (q[0] < 1 || q[0] > 3 || q[1] < 1 || q[1] > 3) {
        throw std::invalid_argument("--nested parties must be 1, 2 or 3");
      }
      const double v = nested_invariant(f.state, static_cast<Cut>(q[0] - 1),
                                        static_cast<Cut>(q[1] - 1), q[2], q[3]);
      r.nested.push_back({q[0], q[1], q[2], q[3], v});
    }
    r.tolerances = report::tolerances_used(args.common.tol);
    r.elapsed_ms = elapsed_ms(start);
    if (args.common.json) {
      out << dump(json(r)) << '\n';
      return 0;
    }
    out << "state: " << f.label << "  dims " << r.dims[0] << ' ' << r.dims[1] << ' '
        << r.dims[2] << '\n';
    for (const auto& [cut, values] : r.invariants[0]) {
      out << family_name(cut_from_char(cut[0])) << " (cut " << cut << "): ";
      print_values(out, values);
      out << '\n';
    }
    for (const auto& n : r.nested) {
      out << "Tr(Tr_" << n.outer << "(Tr_" << n.inner << " rho)^" << n.alpha << ")^" << n.beta
          << " = " << fmt(n.value) << '\n';
    }
    return 0;
  });
}

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  if (args.paths.size() < 2 || args.paths.size() % 2 != 0) {
    err << "error: check needs pairs of state files\n";
    return kUsage;
  }
  std::vector<std::pair<io::StateFile, io::StateFile>> pairs;
  const int load_status = guarded(err, [&] {
    for (std::size_t p = 0; p < args.paths.size(); p += 2) {
      auto first = load_state(args.paths[p], args.common, err);
      auto second = load_state(args.paths[p + 1], args.common, err);
      if (first.state.dims() != second.state.dims()) {
        throw io::ParseError(args.paths[p + 1], 0, "dimensions differ from " + args.paths[p]);
      }
      pairs.emplace_back(std::move(first), std::move(second));
    }
    return 0;
  });
  if (load_status != 0) return load_status;

  std::vector<report::DecisionReport> reports(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      const auto start = Clock::now();
      const auto& [s, t] = pairs[i];
      report::DecisionReport& r = reports[i];
      r.command = "check";
      r.dims = dims_list(s.state.dims());
      r.labels = {s.label, t.label};
      r.invariants = {report::invariant_table(s.state), report::invariant_table(t.state)};
      report::fill_decision(
          r, decide_equivalence(s.state, t.state, args.common.tol, args.options));
      r.tolerances = report::tolerances_used(args.common.tol);
      r.elapsed_ms = elapsed_ms(start);
    }
  };
  const unsigned jobs =
      std::max(1u, std::min<unsigned>(args.jobs, static_cast<unsigned>(pairs.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json doc = reports.size() == 1 ? json(reports[0]) : json(reports);
  if (args.common.json) {
    out << dump(doc) << '\n';
  } else {
    for (const auto& r : reports) print_decision_text(out, r);
  }
  if (!args.report_path.empty()) {
    try {
      io::write_file(args.report_path, dump(doc) + "\n");
    } catch (const io::FileError& e) {
      err << "error: " << e.what() << '\n';
      return kNoInput;
    }
  }
  int status = 0;
  for (const auto& r : reports) status = std::max(status, r.exit_status);
  return status;
}

int cmd_factorize(const FactorizeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = Clock::now();
    const io::MatrixFile f = io::read_matrix(args.path);
    const io::Matrix& u = f.matrix;
    if (u.rows() != u.cols()) {
      throw io::ParseError(args.path, 0,
                           "matrix is " + std::to_string(u.rows()) + "x" +
                               std::to_string(u.cols()) + ", not square");
    }
    if (args.m < 1 || args.n < 1 || args.m * args.n != u.rows()) {
      err << "error: m*n = " << args.m * args.n << " does not match matrix size " << u.rows()
          << '\n';
      return static_cast<int>(kUsage);
    }
    const auto kf = is_unitarily_decomposable(u, args.m, args.n, args.common.tol);

    report::DecisionReport r;
    r.command = "factorize";
    r.exit_status = kf.decomposable ? 0 : 1;
    r.labels = {f.label.empty() ? std::filesystem::path(args.path).filename().string() : f.label};
    r.factorization = report::Factorization{args.m,     args.n,       kf.decomposable,
                                            kf.defect,  kf.scale,     kf.residual,
                                            kf.first,   kf.second};
    r.tolerances = report::tolerances_used(args.common.tol);
    r.elapsed_ms = elapsed_ms(start);
    if (args.common.json) {
      out << dump(json(r)) << '\n';
    } else {
      out << "matrix: " << r.labels[0] << "  (" << u.rows() << "x" << u.cols() << ", m=" << args.m
          << ", n=" << args.n << ")\n";
      out << (kf.decomposable ? "decomposable" : "not decomposable") << '\n';
      out << "  realignment defect: " << fmt(kf.defect) << '\n';
      if (kf.decomposable) {
        out << "  scale k: " << fmt(kf.scale) << '\n';
        out << "  residual: " << fmt(kf.residual) << '\n';
        print_matrix(out, "first", kf.first);
        print_matrix(out, "second", kf.second);
      }
    }
    return r.exit_status;
  });
}

RandomInstance random_instance(Dims dims, std::uint64_t seed, int index, bool lu_pair) {
  const auto base = static_cast<std::uint64_t>(index) * 4;
  RandomInstance inst{random_state<double>(dims, derive_seed(seed, base)), std::nullopt, {}};
  if (lu_pair) {
    for (int p = 0; p < 3; ++p) {
      inst.unitaries[p] =
          random_unitary<double>(dims[p], derive_seed(seed, base + 1 + static_cast<unsigned>(p)));
    }
    inst.partner = apply_local_unitaries(inst.state, inst.unitaries[0], inst.unitaries[1],
                                         inst.unitaries[2]);
  }
  return inst;
}

int cmd_random(const RandomArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto [k, m, n] = args.dims;
    if (k < 1 || m < 1 || n < 1) throw std::invalid_argument("dims must be positive");
    if (args.count < 0) throw std::invalid_argument("count must be non-negative");
    const Dims dims{k, m, n};
    const std::filesystem::path dir(args.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io::FileError("cannot create " + dir.string() + ": " + ec.message());

    for (int i = 0; i < args.count; ++i) {
      const RandomInstance inst = random_instance(dims, args.seed, i, args.lu_pair);
      std::ostringstream stem;
      stem << args.prefix << '_' << std::setw(3) << std::setfill('0') << i;
      std::ostringstream label;
      label << "random seed " << args.seed << " #" << i;
      const auto write = [&](const std::string& suffix, const std::string& text) {
        const auto path = dir / (stem.str() + suffix + ".txt");
        io::write_file(path, text);
        out << path.string() << '\n';
      };
      write("", io::serialize_state(inst.state, label.str()));
      if (inst.partner) {
        write("_partner", io::serialize_state(*inst.partner, label.str() + " partner"));
        for (int p = 0; p < 3; ++p) {
          write("_u" + std::to_string(p + 1),
                io::serialize_matrix(inst.unitaries[p],
                                     label.str() + " U" + std::to_string(p + 1)));
        }
      }
    }
    return 0;
  });
}

namespace {

void add_tolerance_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--tol", f.tol.recon, "Certificate reconstruction tolerance")
      ->capture_default_str();
  cmd->add_option("--spec-tol", f.tol.spectrum, "Spectrum / invariant equality tolerance")
      ->capture_default_str();
  cmd->add_option("--rank1-tol", f.tol.rank1, "Realignment sigma2/sigma1 threshold")
      ->capture_default_str();
  cmd->add_option("--unitarity-tol", f.tol.unitarity, "Unitarity check tolerance")
      ->capture_default_str();
  cmd->add_flag("--json", f.json, "Emit the structured report as JSON");
}

std::array<Cut, 3> parse_order(const std::string& text) {
  if (text.size() != 3) throw CLI::ValidationError("--order", "expects a permutation of ABC");
  std::array<Cut, 3> order{};
  std::array<bool, 3> seen{};
  for (int i = 0; i < 3; ++i) {
    try {
      order[i] = cut_from_char(text[static_cast<std::size_t>(i)]);
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("--order", "expects a permutation of ABC");
    }
    if (seen[cut_index(order[i])]) {
      throw CLI::ValidationError("--order", "expects a permutation of ABC");
    }
    seen[cut_index(order[i])] = true;
  }
  return order;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local-unitary equivalence of tripartite pure states", "luequiv"};
  app.require_subcommand(1);

  InvariantsArgs inv;
  std::vector<int> nested_raw;
  auto* inv_cmd = app.add_subcommand("invariants", "Print the I, J, K power-sum invariants");
  inv_cmd->add_option("state", inv.path, "State file")->required();
  inv_cmd->add_option("--max-order", inv.max_order, "Highest power (default min{K,M,N})");
  inv_cmd
      ->add_option("--nested", nested_raw,
                   "Nested invariant Tr(Tr_i(Tr_j rho)^a)^b as: i j a b (repeatable)")
      ->type_size(4)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  inv_cmd->add_flag("--strict", inv.common.strict, "Reject unnormalized states");
  add_tolerance_flags(inv_cmd, inv.common);

  CheckArgs check;
  std::string order_text = "ABC";
  auto* check_cmd = app.add_subcommand("check", "Decide LU equivalence of state pairs");
  check_cmd->add_option("states", check.paths, "State files: first second [first second ...]")
      ->required();
  check_cmd->add_option("--gauge-iters", check.options.gauge.budget, "Gauge search sweeps")
      ->capture_default_str();
  check_cmd->add_option("--order", order_text, "Order of the D_i tests, e.g. ABC or CBA")
      ->capture_default_str();
  check_cmd->add_option("--seed", check.options.gauge.seed, "Seed of the gauge restarts");
  check_cmd->add_option("--jobs", check.jobs, "Pairs checked concurrently")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--report", check.report_path, "Also write the JSON report here");
  check_cmd->add_flag("--strict", check.common.strict, "Reject unnormalized states");
  add_tolerance_flags(check_cmd, check.common);

  FactorizeArgs fac;
  auto* fac_cmd =
      app.add_subcommand("factorize", "Test whether a unitary is U1 (x) U2 by realignment");
  fac_cmd->add_option("matrix", fac.path, "Matrix file")->required();
  fac_cmd->add_option("m", fac.m, "Size of the first factor")->required();
  fac_cmd->add_option("n", fac.n, "Size of the second factor")->required();
  add_tolerance_flags(fac_cmd, fac.common);

  RandomArgs rnd;
  std::vector<long long> rnd_dims{2, 2, 2};
  auto* rnd_cmd = app.add_subcommand("random", "Write seeded random states");
  rnd_cmd->add_option("--dims", rnd_dims, "K M N")->expected(3)->capture_default_str();
  rnd_cmd->add_option("--seed", rnd.seed, "Seed")->capture_default_str();
  rnd_cmd->add_option("--count", rnd.count, "Number of states")->capture_default_str();
  rnd_cmd->add_flag("--lu-pair", rnd.lu_pair, "Also write an LU-equivalent partner + unitaries");
  rnd_cmd->add_option("--out", rnd.out_dir, "Output directory")->capture_default_str();
  rnd_cmd->add_option("--prefix", rnd.prefix, "File name prefix")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (check_cmd->parsed()) check.options.order = parse_order(order_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  if (inv_cmd->parsed()) {
    for (std::size_t i = 0; i + 3 < nested_raw.size(); i += 4) {
      inv.nested.push_back({nested_raw[i], nested_raw[i + 1], nested_raw[i + 2],
                            nested_raw[i + 3]});
    }
    return cmd_invariants(inv, out, err);
  }
  if (check_cmd->parsed()) return cmd_check(check, out, err);
  if (fac_cmd->parsed()) return cmd_factorize(fac, out, err);
  rnd.dims = {rnd_dims.at(0), rnd_dims.at(1), rnd_dims.at(2)};
  return cmd_random(rnd, out, err);
}

}  // namespace luequiv::cli
