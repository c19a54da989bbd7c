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

// Bipartite equivalence by singular value decomposition, the search for a
// Kronecker-decomposable bridge, and the tripartite D1 -> D2 -> D3 cascade.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "luequiv/invariants.hpp"
#include "luequiv/linalg.hpp"
#include "luequiv/realign.hpp"
#include "luequiv/state.hpp"
#include "luequiv/types.hpp"

namespace luequiv {

/// A' = U A V^t with U, V unitary.
template <typename Real = double>
struct BipartiteCertificate {
  CMatrix<Real> U;
  CMatrix<Real> V;
  RVector<Real> sigma;  ///< shared singular spectrum, descending
  Real residual = Real(0);
};

/// Singular spectra differ at `index` (0-based) by `deviation`.
template <typename Real = double>
struct SpectrumMismatch {
  Index index = 0;
  Real deviation = Real(0);
  RVector<Real> lhs;
  RVector<Real> rhs;
};

template <typename Real = double>
using BipartiteResult = std::variant<BipartiteCertificate<Real>, SpectrumMismatch<Real>>;

/// Returns the first index of maximal deviation if the spectra differ by more than tol.
template <typename Real>
std::optional<SpectrumMismatch<Real>> compare_spectra(const RVector<Real>& lhs,
                                                      const RVector<Real>& rhs, Real tol) {
  if (lhs.size() != rhs.size()) {
    throw std::invalid_argument("spectra have different lengths");
  }
  if (lhs.size() == 0) return std::nullopt;
  Index idx = 0;
  const Real dev = (lhs - rhs).cwiseAbs().maxCoeff(&idx);
  if (dev <= tol) return std::nullopt;
  return SpectrumMismatch<Real>{idx, dev, lhs, rhs};
}

/// Best unitary U for a fixed V: argmin ||A' - U (A V^t)||_F.
template <typename Real>
CMatrix<Real> procrustes_row_unitary(const CMatrix<Real>& a, const CMatrix<Real>& a_prime,
                                     const CMatrix<Real>& v) {
  const CMatrix<Real> w = a * v.transpose();
  return polar_unitary<Real>(a_prime * w.adjoint());
}

template <typename Real>
Real bridge_residual(const CMatrix<Real>& a, const CMatrix<Real>& a_prime,
                     const CMatrix<Real>& u, const CMatrix<Real>& v) {
  return (a_prime - u * a * v.transpose()).norm();
}

/// Decides whether the bipartite pure states with coefficient matrices A and
/// A' are related by local unitaries, A' = U A V^t.
///
/// With full SVDs A = u D w^dag and A' = u' D w'^dag the certificate is
/// U = u' u^dag and V = conj(w') w^t. If the residual still exceeds
/// tol.recon (spectra equal only to tol.spectrum), U is re-solved as the
/// Procrustes optimum for that V. Throws InconclusiveError if that fails too.
template <typename Real>
BipartiteResult<Real> bipartite_equivalent(const CMatrix<Real>& a, const CMatrix<Real>& a_prime,
                                           const Tolerances<Real>& tol = {}) {
  if (a.rows() != a_prime.rows() || a.cols() != a_prime.cols()) {
    throw std::invalid_argument("bipartite_equivalent: shape mismatch");
  }
  Eigen::JacobiSVD<CMatrix<Real>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<CMatrix<Real>> svd_p(a_prime, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (auto mismatch =
          compare_spectra<Real>(svd.singularValues(), svd_p.singularValues(), tol.spectrum)) {
    return *mismatch;
  }
  BipartiteCertificate<Real> cert;
  cert.sigma = svd.singularValues();
  cert.U = svd_p.matrixU() * svd.matrixU().adjoint();
  cert.V = svd_p.matrixV().conjugate() * svd.matrixV().transpose();
  cert.residual = bridge_residual(a, a_prime, cert.U, cert.V);
  if (cert.residual > tol.recon) {
    cert.U = procrustes_row_unitary(a, a_prime, cert.V);
    cert.residual = bridge_residual(a, a_prime, cert.U, cert.V);
    if (cert.residual > tol.recon) {
      throw InconclusiveError("bipartite certificate residual " +
                              std::to_string(static_cast<double>(cert.residual)) +
                              " exceeds tolerance");
    }
  }
  return cert;
}

struct GaugeOptions {
  int budget = 200;         ///< total alternating sweeps; 0 disables the search
  std::uint64_t seed = 0;   ///< seeds the random restarts
};

template <typename Real = double>
struct GaugeResult {
  KronFactorization<Real> factorization;  ///< of the returned V
  CMatrix<Real> U;
  CMatrix<Real> V;
  Real bridge_residual = Real(0);  ///< ||A' - U A V^t||_F
  Real best_search_residual = std::numeric_limits<Real>::infinity();
  int sweeps = 0;
};

namespace detail {

/// Relative phases phi_r (phi_ref = 0) from Z[r,s] = e^{i(phi_r - phi_s)} w_rs,
/// propagated along a maximum-weight spanning tree.
template <typename Real>
std::vector<Real> spanning_tree_phases(const CMatrix<Real>& z) {
  const Index n = z.rows();
  std::vector<Real> phase(static_cast<std::size_t>(n), Real(0));
  if (n == 0) return phase;
  const RVector<Real> diag = z.diagonal().cwiseAbs();
  Index ref = 0;
  const Real top = diag.maxCoeff(&ref);
  if (!(top > Real(0))) return phase;
  const Real floor = top * Real(1e-14);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  done[static_cast<std::size_t>(ref)] = true;
  while (true) {
    Real best = floor;
    Index best_r = -1;
    Index best_s = -1;
    for (Index r = 0; r < n; ++r) {
      if (done[static_cast<std::size_t>(r)]) continue;
      for (Index s = 0; s < n; ++s) {
        if (!done[static_cast<std::size_t>(s)]) continue;
        const Real w = std::abs(z(r, s));
        if (w > best) {
          best = w;
          best_r = r;
          best_s = s;
        }
      }
    }
    if (best_r < 0) break;
    phase[static_cast<std::size_t>(best_r)] =
        phase[static_cast<std::size_t>(best_s)] + std::arg(z(best_r, best_s));
    done[static_cast<std::size_t>(best_r)] = true;
  }
  return phase;
}

/// Seed G = (G0, G1, G2) with target ~ (G0 (x) G1 (x) G2) source, built from the
/// eigenbases of the one-party marginals with phases solved exactly for
/// nondegenerate marginals.
template <typename Real>
std::array<CMatrix<Real>, 3> marginal_seed(const CVector<Real>& source, const CVector<Real>& target,
                                           const Shape3& s) {
  std::array<CMatrix<Real>, 3> e;
  std::array<CMatrix<Real>, 3> e_t;
  CVector<Real> th = source;
  CVector<Real> th_t = target;
  for (int p = 0; p < 3; ++p) {
    const CMatrix<Real> us = unfold(source, s, p);
    const CMatrix<Real> ut = unfold(target, s, p);
    e[p] = descending_eigenvectors<Real>(us * us.adjoint());
    e_t[p] = descending_eigenvectors<Real>(ut * ut.adjoint());
    th = mode_product<Real>(th, s, e[p].adjoint(), p);
    th_t = mode_product<Real>(th_t, s, e_t[p].adjoint(), p);
  }
  // c = e^{i(a_r + b_p + c_q)} |th|^2 when the marginals are nondegenerate.
  const CVector<Real> c = th_t.cwiseProduct(th.conjugate());
  std::array<std::vector<Real>, 3> phases;
  for (int p = 0; p < 3; ++p) {
    const CMatrix<Real> cu = unfold(c, s, p);
    phases[p] = spanning_tree_phases<Real>(cu * cu.adjoint());
  }
  Complex<Real> offset(0);
  for (Index a = 0; a < s[0]; ++a) {
    for (Index b = 0; b < s[1]; ++b) {
      for (Index q = 0; q < s[2]; ++q) {
        const Real ph = phases[0][a] + phases[1][b] + phases[2][q];
        offset += c(flat3(s, a, b, q)) * std::polar(Real(1), -ph);
      }
    }
  }
  const Real shift = std::abs(offset) > Real(0) ? std::arg(offset) : Real(0);
  for (auto& ph : phases[0]) ph += shift;

  std::array<CMatrix<Real>, 3> g;
  for (int p = 0; p < 3; ++p) {
    CVector<Real> d(s[p]);
    for (Index r = 0; r < s[p]; ++r) d(r) = std::polar(Real(1), phases[p][r]);
    g[p] = e_t[p] * d.asDiagonal() * e[p].adjoint();
  }
  return g;
}

/// Alternating Procrustes sweeps on ||target - (G0 (x) G1 (x) G2) source||.
/// Returns the final residual; `sweeps` is incremented per sweep.
template <typename Real>
Real align_local_unitaries(const CVector<Real>& source, const CVector<Real>& target,
                           const Shape3& s, std::array<CMatrix<Real>, 3>& g, int max_sweeps,
                           Real target_residual, int& sweeps) {
  auto residual_of = [&] {
    CVector<Real> t = source;
    for (int p = 0; p < 3; ++p) t = mode_product<Real>(t, s, g[p], p);
    return (target - t).norm();
  };
  Real res = residual_of();
  for (int it = 0; it < max_sweeps && res > target_residual; ++it) {
    for (int mode = 0; mode < 3; ++mode) {
      CVector<Real> w = source;
      for (int p = 0; p < 3; ++p) {
        if (p != mode) w = mode_product<Real>(w, s, g[p], p);
      }
      g[mode] = polar_unitary<Real>(unfold(target, s, mode) * unfold(w, s, mode).adjoint());
    }
    ++sweeps;
    const Real next = residual_of();
    const bool stalled = res - next <= Real(1e-13) * std::max(res, Real(1e-300));
    res = next;
    if (stalled) break;
  }
  return res;
}

}  // namespace detail

/// Searches the bridges V with A' = U A V^t for one of the form X (x) Y
/// (X: m x m, Y: n x n), starting from the given bridge V.
///
/// The search minimizes ||A' - U A (X (x) Y)^t|| over unitaries U, X, Y by
/// alternating Procrustes sweeps from, in turn: the nearest unitary Kronecker
/// factors of V, phase-aligned marginal eigenbases, and seeded random
/// unitaries. It stops at the first bridge that passes the realignment test;
/// otherwise it returns V with its factorization. Heuristic: a failed search
/// does not show that no decomposable bridge exists.
template <typename Real>
GaugeResult<Real> gauge_search(const CMatrix<Real>& a, const CMatrix<Real>& a_prime,
                               const CMatrix<Real>& v, Index m, Index n,
                               const GaugeOptions& options = {},
                               const Tolerances<Real>& tol = {}) {
  if (a.rows() != a_prime.rows() || a.cols() != a_prime.cols() || a.cols() != m * n ||
      v.rows() != m * n || v.cols() != m * n) {
    throw std::invalid_argument("gauge_search: incompatible shapes");
  }
  GaugeResult<Real> out;
  out.V = v;
  out.factorization = is_unitarily_decomposable(v, m, n, tol);
  out.U = procrustes_row_unitary(a, a_prime, v);
  out.bridge_residual = bridge_residual(a, a_prime, out.U, v);
  if ((out.factorization.decomposable && out.bridge_residual <= tol.recon) ||
      options.budget <= 0) {
    return out;
  }

  const detail::Shape3 shape{a.rows(), m, n};
  const CVector<Real> source = detail::fold<Real>(a, shape, 0);
  const CVector<Real> target = detail::fold<Real>(a_prime, shape, 0);
  const Real goal = tol.recon * Real(1e-3);

  auto try_seed = [&](std::array<CMatrix<Real>, 3> g, int cap) -> bool {
    const int sweeps = std::min(cap, options.budget - out.sweeps);
    if (sweeps <= 0) return false;
    const Real res = detail::align_local_unitaries(source, target, shape, g, sweeps, goal,
                                                   out.sweeps);
    out.best_search_residual = std::min(out.best_search_residual, res);
    if (res > tol.recon) return false;
    const CMatrix<Real> candidate = kron(g[1], g[2]);
    KronFactorization<Real> f = is_unitarily_decomposable(candidate, m, n, tol);
    const Real bridge = bridge_residual(a, a_prime, g[0], candidate);
    if (!f.decomposable || bridge > tol.recon) return false;
    out.factorization = std::move(f);
    out.U = g[0];
    out.V = candidate;
    out.bridge_residual = bridge;
    return true;
  };

  {
    const KronFactorization<Real> near = kron_factorize(v, m, n, tol.rank1);
    if (near.X.norm() > Real(0) && near.Y.norm() > Real(0)) {
      std::array<CMatrix<Real>, 3> g{CMatrix<Real>(), polar_unitary<Real>(near.X),
                                     polar_unitary<Real>(near.Y)};
      g[0] = procrustes_row_unitary(a, a_prime, kron(g[1], g[2]));
      if (try_seed(std::move(g), 50)) return out;
    }
  }
  if (try_seed(detail::marginal_seed(source, target, shape), 50)) return out;
  for (std::uint64_t restart = 0; out.sweeps < options.budget; ++restart) {
    std::array<CMatrix<Real>, 3> g;
    for (int p = 0; p < 3; ++p) {
      g[p] = random_unitary<Real>(shape[p], derive_seed(options.seed, restart * 3 + p));
    }
    if (try_seed(std::move(g), 100)) return out;
  }
  return out;
}

enum class Verdict { EquivalentD1, EquivalentD2, EquivalentD3, InvariantsDiffer, Inconclusive };

inline constexpr std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::EquivalentD1:
      return "EquivalentD1";
    case Verdict::EquivalentD2:
      return "EquivalentD2";
    case Verdict::EquivalentD3:
      return "EquivalentD3";
    case Verdict::InvariantsDiffer:
      return "InvariantsDiffer";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

inline constexpr bool is_equivalent(Verdict v) {
  return v == Verdict::EquivalentD1 || v == Verdict::EquivalentD2 || v == Verdict::EquivalentD3;
}

inline constexpr Verdict equivalent_via(Cut c) {
  switch (c) {
    case Cut::A:
      return Verdict::EquivalentD1;
    case Cut::B:
      return Verdict::EquivalentD2;
    case Cut::C:
      return Verdict::EquivalentD3;
  }
  return Verdict::Inconclusive;
}

template <typename Real = double>
struct LocalFactors {
  CMatrix<Real> u1;
  CMatrix<Real> u2;
  CMatrix<Real> u3;
};

/// An attempted D_i construction: A'_i = U A_i V^t with V on the other two parties.
template <typename Real = double>
struct Bridge {
  Cut cut = Cut::A;
  CMatrix<Real> U;
  CMatrix<Real> V;
  Real raw_defect = Real(1);  ///< realignment defect of the plain SVD bridge
  Real defect = Real(1);      ///< realignment defect of the returned V
  Real residual = Real(0);    ///< ||A'_i - U A_i V^t||_F
  int gauge_sweeps = 0;
};

template <typename Real = double>
struct SpectrumWitness {
  Cut cut = Cut::A;
  Index spectrum_index = 0;  ///< 0-based position of the largest deviation
  int order = 0;             ///< first alpha with differing power sums, 0 if none
  Real deviation = Real(0);
  RVector<Real> lhs;
  RVector<Real> rhs;
};

template <typename Real = double>
struct TripartiteDecision {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<LocalFactors<Real>> local_factors;
  std::optional<Bridge<Real>> bridge;
  std::optional<SpectrumWitness<Real>> witness;
  std::optional<Real> residual;  ///< ||psi' - (U1 (x) U2 (x) U3) psi||
  std::vector<Bridge<Real>> attempts;
};

struct DecisionOptions {
  std::array<Cut, 3> order{Cut::A, Cut::B, Cut::C};
  GaugeOptions gauge;
};

namespace detail {

template <typename Real>
void require_same_dims(const PureTripartiteState<Real>& s, const PureTripartiteState<Real>& t) {
  if (s.dims() != t.dims()) throw std::invalid_argument("states have different dimensions");
}

template <typename Real>
SpectrumWitness<Real> make_witness(Cut cut, const SpectrumMismatch<Real>& mm, Real tol) {
  SpectrumWitness<Real> w{cut, mm.index, 0, mm.deviation, mm.lhs, mm.rhs};
  const RVector<Real> p = mm.lhs.cwiseAbs2();
  const RVector<Real> q = mm.rhs.cwiseAbs2();
  RVector<Real> pa = p;
  RVector<Real> qa = q;
  for (int alpha = 1; alpha <= static_cast<int>(p.size()); ++alpha) {
    if (std::abs(pa.sum() - qa.sum()) > tol) {
      w.order = alpha;
      break;
    }
    pa = pa.cwiseProduct(p);
    qa = qa.cwiseProduct(q);
  }
  return w;
}

template <typename Real>
std::optional<SpectrumWitness<Real>> spectra_witness(const PureTripartiteState<Real>& s,
                                                     const PureTripartiteState<Real>& t,
                                                     Cut cut, const Tolerances<Real>& tol) {
  auto mm = compare_spectra<Real>(singular_spectrum(s, cut), singular_spectrum(t, cut),
                                  tol.spectrum);
  if (!mm) return std::nullopt;
  return make_witness(cut, *mm, tol.invariant);
}

/// Places the cut party's unitary and the two factors of V in subsystem order.
template <typename Real>
LocalFactors<Real> assemble(Cut cut, const CMatrix<Real>& u, const CMatrix<Real>& first,
                            const CMatrix<Real>& second) {
  switch (cut) {
    case Cut::A:
      return {u, first, second};
    case Cut::B:
      return {first, u, second};
    case Cut::C:
      return {first, second, u};
  }
  return {};
}

}  // namespace detail

/// Tests whether the pair is a D_i pair for the given cut: equal cut spectra,
/// an SVD bridge A'_i = U_i A_i V_i^t, and V_i unitarily decomposable over the
/// two remaining parties (after gauge search if the plain bridge is not).
template <typename Real>
TripartiteDecision<Real> check_cut(const PureTripartiteState<Real>& state,
                                   const PureTripartiteState<Real>& other, Cut cut,
                                   const Tolerances<Real>& tol = {},
                                   const DecisionOptions& options = {}) {
  detail::require_same_dims(state, other);
  TripartiteDecision<Real> out;
  if (auto w = detail::spectra_witness(state, other, cut, tol)) {
    out.verdict = Verdict::InvariantsDiffer;
    out.witness = std::move(w);
    return out;
  }

  const CMatrix<Real> a = matricize(state, cut);
  const CMatrix<Real> a_prime = matricize(other, cut);
  BipartiteResult<Real> bip;
  try {
    bip = bipartite_equivalent(a, a_prime, tol);
  } catch (const InconclusiveError&) {
    return out;
  }
  if (const auto* mm = std::get_if<SpectrumMismatch<Real>>(&bip)) {
    out.verdict = Verdict::InvariantsDiffer;
    out.witness = detail::make_witness(cut, *mm, tol.invariant);
    return out;
  }
  const auto& cert = std::get<BipartiteCertificate<Real>>(bip);

  const auto [m, n] = state.dims().complement(cut);
  GaugeResult<Real> g;
  try {
    g = gauge_search(a, a_prime, cert.V, m, n, options.gauge, tol);
  } catch (const NonUnitaryError&) {
    return out;
  }
  Bridge<Real> bridge{cut,
                      g.U,
                      g.V,
                      kron_factorize(cert.V, m, n, tol.rank1).defect,
                      g.factorization.defect,
                      g.bridge_residual,
                      g.sweeps};
  out.attempts.push_back(bridge);
  out.bridge = bridge;
  if (!g.factorization.decomposable || g.bridge_residual > tol.recon) return out;

  LocalFactors<Real> factors =
      detail::assemble(cut, g.U, g.factorization.first, g.factorization.second);
  const auto mapped = apply_local_unitaries(state, factors.u1, factors.u2, factors.u3,
                                            tol.unitarity);
  const Real residual = (other.amplitudes() - mapped.amplitudes()).norm();
  out.residual = residual;
  if (residual > tol.recon) return out;
  out.verdict = equivalent_via(cut);
  out.local_factors = std::move(factors);
  return out;
}

/// Runs the D_i tests in options.order. Differing spectra on any cut prove
/// inequivalence and are reported first; otherwise the first successful D_i
/// wins, and if none succeeds the verdict is Inconclusive with the
/// lowest-defect bridge attached.
template <typename Real>
TripartiteDecision<Real> decide_equivalence(const PureTripartiteState<Real>& state,
                                            const PureTripartiteState<Real>& other,
                                            const Tolerances<Real>& tol = {},
                                            const DecisionOptions& options = {}) {
  detail::require_same_dims(state, other);
  for (Cut cut : options.order) {
    if (auto w = detail::spectra_witness(state, other, cut, tol)) {
      TripartiteDecision<Real> out;
      out.verdict = Verdict::InvariantsDiffer;
      out.witness = std::move(w);
      return out;
    }
  }
  TripartiteDecision<Real> out;
  for (Cut cut : options.order) {
    TripartiteDecision<Real> d = check_cut(state, other, cut, tol, options);
    std::vector<Bridge<Real>> attempts = std::move(out.attempts);
    attempts.insert(attempts.end(), d.attempts.begin(), d.attempts.end());
    if (is_equivalent(d.verdict) || d.verdict == Verdict::InvariantsDiffer) {
      d.attempts = std::move(attempts);
      return d;
    }
    out.attempts = std::move(attempts);
    if (d.bridge && (!out.bridge || d.bridge->defect < out.bridge->defect)) {
      out.bridge = d.bridge;
    }
  }
  out.verdict = Verdict::Inconclusive;
  return out;
}

}  // namespace luequiv
