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

#include "luequiv/report.hpp"

namespace luequiv::report {

using nlohmann::json;

json matrix_to_json(const io::Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

io::Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Index>(j.at(0).size()) : Index(0);
  io::Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Index>(row.size()) != cols) throw std::invalid_argument("ragged matrix");
    for (Index c = 0; c < cols; ++c) {
      const json& z = row.at(static_cast<std::size_t>(c));
      m(r, c) = {z.at(0).get<double>(), z.at(1).get<double>()};
    }
  }
  return m;
}

namespace {

bool same_matrix(const io::Matrix& a, const io::Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

bool BridgeInfo::operator==(const BridgeInfo& o) const {
  return cut == o.cut && same_matrix(U, o.U) && same_matrix(V, o.V) && defect == o.defect &&
         residual == o.residual;
}

bool Certificate::operator==(const Certificate& o) const {
  return same_matrix(U1, o.U1) && same_matrix(U2, o.U2) && same_matrix(U3, o.U3);
}

bool Factorization::operator==(const Factorization& o) const {
  return m == o.m && n == o.n && decomposable == o.decomposable && defect == o.defect &&
         scale == o.scale && residual == o.residual && same_matrix(first, o.first) &&
         same_matrix(second, o.second);
}

void to_json(json& j, const Attempt& a) {
  j = {{"cut", a.cut},
       {"raw_defect", a.raw_defect},
       {"defect", a.defect},
       {"bridge_residual", a.bridge_residual},
       {"gauge_sweeps", a.gauge_sweeps}};
}
void from_json(const json& j, Attempt& a) {
  j.at("cut").get_to(a.cut);
  j.at("raw_defect").get_to(a.raw_defect);
  j.at("defect").get_to(a.defect);
  j.at("bridge_residual").get_to(a.bridge_residual);
  j.at("gauge_sweeps").get_to(a.gauge_sweeps);
}

void to_json(json& j, const Witness& w) {
  j = {{"cut", w.cut},           {"spectrum_index", w.spectrum_index},
       {"order", w.order},       {"deviation", w.deviation},
       {"first", w.first},       {"second", w.second}};
}
void from_json(const json& j, Witness& w) {
  j.at("cut").get_to(w.cut);
  j.at("spectrum_index").get_to(w.spectrum_index);
  j.at("order").get_to(w.order);
  j.at("deviation").get_to(w.deviation);
  j.at("first").get_to(w.first);
  j.at("second").get_to(w.second);
}

void to_json(json& j, const BridgeInfo& b) {
  j = {{"cut", b.cut},
       {"U", matrix_to_json(b.U)},
       {"V", matrix_to_json(b.V)},
       {"defect", b.defect},
       {"residual", b.residual}};
}
void from_json(const json& j, BridgeInfo& b) {
  j.at("cut").get_to(b.cut);
  b.U = matrix_from_json(j.at("U"));
  b.V = matrix_from_json(j.at("V"));
  j.at("defect").get_to(b.defect);
  j.at("residual").get_to(b.residual);
}

void to_json(json& j, const Certificate& c) {
  j = {{"U1", matrix_to_json(c.U1)}, {"U2", matrix_to_json(c.U2)}, {"U3", matrix_to_json(c.U3)}};
}
void from_json(const json& j, Certificate& c) {
  c.U1 = matrix_from_json(j.at("U1"));
  c.U2 = matrix_from_json(j.at("U2"));
  c.U3 = matrix_from_json(j.at("U3"));
}

void to_json(json& j, const Nested& n) {
  j = {{"outer", n.outer}, {"inner", n.inner}, {"alpha", n.alpha},
       {"beta", n.beta},   {"value", n.value}};
}
void from_json(const json& j, Nested& n) {
  j.at("outer").get_to(n.outer);
  j.at("inner").get_to(n.inner);
  j.at("alpha").get_to(n.alpha);
  j.at("beta").get_to(n.beta);
  j.at("value").get_to(n.value);
}

void to_json(json& j, const Factorization& f) {
  j = {{"m", f.m},
       {"n", f.n},
       {"decomposable", f.decomposable},
       {"defect", f.defect},
       {"scale", f.scale},
       {"residual", f.residual},
       {"first", f.decomposable ? matrix_to_json(f.first) : json(nullptr)},
       {"second", f.decomposable ? matrix_to_json(f.second) : json(nullptr)}};
}
void from_json(const json& j, Factorization& f) {
  j.at("m").get_to(f.m);
  j.at("n").get_to(f.n);
  j.at("decomposable").get_to(f.decomposable);
  j.at("defect").get_to(f.defect);
  j.at("scale").get_to(f.scale);
  j.at("residual").get_to(f.residual);
  f.first = j.at("first").is_null() ? io::Matrix() : matrix_from_json(j.at("first"));
  f.second = j.at("second").is_null() ? io::Matrix() : matrix_from_json(j.at("second"));
}

void to_json(json& j, const TolerancesUsed& t) {
  j = {{"norm", t.norm},   {"unitarity", t.unitarity}, {"spectrum", t.spectrum},
       {"recon", t.recon}, {"rank1", t.rank1},         {"invariant", t.invariant}};
}
void from_json(const json& j, TolerancesUsed& t) {
  j.at("norm").get_to(t.norm);
  j.at("unitarity").get_to(t.unitarity);
  j.at("spectrum").get_to(t.spectrum);
  j.at("recon").get_to(t.recon);
  j.at("rank1").get_to(t.rank1);
  j.at("invariant").get_to(t.invariant);
}

void to_json(json& j, const DecisionReport& r) {
  j = json{{"schema", r.schema},
           {"command", r.command},
           {"verdict", r.verdict.empty() ? json(nullptr) : json(r.verdict)},
           {"exit_status", r.exit_status},
           {"dims", r.dims},
           {"labels", r.labels},
           {"invariants", r.invariants},
           {"nested", r.nested},
           {"attempts", r.attempts},
           {"witness", optional_to_json(r.witness)},
           {"certificate", optional_to_json(r.certificate)},
           {"bridge", optional_to_json(r.bridge)},
           {"factorization", optional_to_json(r.factorization)},
           {"residual", optional_to_json(r.residual)},
           {"tolerances", r.tolerances},
           {"elapsed_ms", r.elapsed_ms}};
}

void from_json(const json& j, DecisionReport& r) {
  j.at("schema").get_to(r.schema);
  if (r.schema != kSchema) throw std::invalid_argument("unsupported report schema " + r.schema);
  j.at("command").get_to(r.command);
  r.verdict = j.at("verdict").is_null() ? std::string() : j.at("verdict").get<std::string>();
  j.at("exit_status").get_to(r.exit_status);
  j.at("dims").get_to(r.dims);
  j.at("labels").get_to(r.labels);
  j.at("invariants").get_to(r.invariants);
  j.at("nested").get_to(r.nested);
  j.at("attempts").get_to(r.attempts);
  r.witness = optional_from_json<Witness>(j, "witness");
  r.certificate = optional_from_json<Certificate>(j, "certificate");
  r.bridge = optional_from_json<BridgeInfo>(j, "bridge");
  r.factorization = optional_from_json<Factorization>(j, "factorization");
  r.residual = optional_from_json<double>(j, "residual");
  j.at("tolerances").get_to(r.tolerances);
  j.at("elapsed_ms").get_to(r.elapsed_ms);
}

bool DecisionReport::same_content(const DecisionReport& o) const {
  return schema == o.schema && command == o.command && verdict == o.verdict &&
         exit_status == o.exit_status && dims == o.dims && labels == o.labels &&
         invariants == o.invariants && nested == o.nested && attempts == o.attempts &&
         witness == o.witness && certificate == o.certificate && bridge == o.bridge &&
         factorization == o.factorization && residual == o.residual &&
         tolerances == o.tolerances;
}

TolerancesUsed tolerances_used(const Tolerances<double>& tol) {
  return {tol.norm, tol.unitarity, tol.spectrum, tol.recon, tol.rank1, tol.invariant};
}

InvariantTable invariant_table(const io::State& state) {
  InvariantTable table;
  for (Cut cut : kAllCuts) {
    table[std::string(cut_name(cut))] = power_sum_invariants(state, cut).values;
  }
  return table;
}

int exit_status(Verdict v) {
  switch (v) {
    case Verdict::EquivalentD1:
    case Verdict::EquivalentD2:
    case Verdict::EquivalentD3:
      return 0;
    case Verdict::InvariantsDiffer:
      return 1;
    case Verdict::Inconclusive:
      return 2;
  }
  return 2;
}

void fill_decision(DecisionReport& r, const TripartiteDecision<double>& d) {
  r.verdict = std::string(verdict_name(d.verdict));
  r.exit_status = exit_status(d.verdict);
  r.attempts.clear();
  for (const auto& b : d.attempts) {
    r.attempts.push_back(
        {std::string(cut_name(b.cut)), b.raw_defect, b.defect, b.residual, b.gauge_sweeps});
  }
  if (d.witness) {
    const auto& w = *d.witness;
    r.witness = Witness{std::string(cut_name(w.cut)),
                        static_cast<long long>(w.spectrum_index + 1),
                        w.order,
                        w.deviation,
                        {w.lhs.begin(), w.lhs.end()},
                        {w.rhs.begin(), w.rhs.end()}};
  }
  if (d.local_factors) {
    r.certificate = Certificate{d.local_factors->u1, d.local_factors->u2, d.local_factors->u3};
  }
  if (d.bridge) {
    r.bridge = BridgeInfo{std::string(cut_name(d.bridge->cut)), d.bridge->U, d.bridge->V,
                          d.bridge->defect, d.bridge->residual};
  }
  r.residual = d.residual;
}

}  // namespace luequiv::report
