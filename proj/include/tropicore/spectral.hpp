#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tropicore/algebra.hpp"
#include "tropicore/digraph.hpp"
#include "tropicore/frobenius.hpp"
#include "tropicore/matrix.hpp"

namespace tropicore {

namespace detail {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// Karp's maximum cycle mean on one strongly connected component, in the log
// domain. D_k(v) = best log-weight of a length-k walk from the source; the
// answer is max_v min_k (D_m(v) - D_k(v)) / (m - k).
inline double karp_log_mean(const Digraph& g, const std::vector<int>& nodes) {
  const int m = static_cast<int>(nodes.size());
  if (m == 1 && !g.has_edge(nodes[0], nodes[0])) return neg_inf;  // no cycle

  std::vector<int> local(g.n, -1);
  for (int i = 0; i < m; ++i) local[nodes[i]] = i;

  std::vector<std::vector<std::pair<int, double>>> in_edges(m);
  for (int i = 0; i < m; ++i) {
    int u = nodes[i];
    for (std::size_t e = 0; e < g.succ[u].size(); ++e) {
      int v = g.succ[u][e];
      if (local[v] >= 0) in_edges[local[v]].emplace_back(i, std::log(g.w[u][e]));
    }
  }

  std::vector<std::vector<double>> d(m + 1, std::vector<double>(m, neg_inf));
  d[0][0] = 0.0;  // source is the first node
  for (int k = 1; k <= m; ++k)
    for (int v = 0; v < m; ++v)
      for (const auto& [u, lw] : in_edges[v])
        if (d[k - 1][u] != neg_inf) d[k][v] = std::max(d[k][v], d[k - 1][u] + lw);

  double best = neg_inf;
  for (int v = 0; v < m; ++v) {
    if (d[m][v] == neg_inf) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k)
      if (d[k][v] != neg_inf) worst = std::min(worst, (d[m][v] - d[k][v]) / (m - k));
    best = std::max(best, worst);
  }
  return best;
}

}  // namespace detail

// Maximum cycle geometric mean lambda(A); 0 when the graph is acyclic.
inline double max_cycle_mean(const Matrix& m, Tolerance tol = {}) {
  Digraph g = digraph_of(m, tol);
  double best = detail::neg_inf;
  for (const auto& scc : strongly_connected_components(g))
    best = std::max(best, detail::karp_log_mean(g, scc));
  return best == detail::neg_inf ? 0.0 : std::exp(best);
}

// Kleene star A* = I (+) A (+) ... (+) A^(n-1), max-times. Finite iff
// lambda(A) <= 1. Floyd-Warshall relaxation; (A*)_ij for i != j is the best
// path weight from i to j.
inline Matrix kleene_star(const Matrix& m, Tolerance tol = {}) {
  double lam = max_cycle_mean(m, tol);
  if (lam > 1.0 + tol.rel_eps + tol.abs_eps)
    throw Error("Kleene star diverges; pass A/lambda(A)", Error::Divergence);
  Matrix c = m;
  const int n = m.n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double cik = c(i, k);
      if (cik == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        double v = cik * c(k, j);
        if (v > c(i, j)) c(i, j) = v;
      }
    }
  for (int i = 0; i < n; ++i) c(i, i) = std::max(c(i, i), 1.0);
  return c;
}

// Diagonal scaling B = X^{-1} A X with b_ij <= 1, and b_ij = 1 exactly on the
// critical edges. The scaling vector is the ordinary column sum of A*, which
// is a positive subeigenvector lying in the interior of the subeigenvector
// cone; strictness is verified after the fact and failures are reported with
// the offending edge.
struct Visualization {
  Vec x;     // positive scaling vector
  Matrix b;  // strictly visualized matrix
};

inline Visualization visualize_strict(const Matrix& m, Tolerance tol = {}) {
  double lam = max_cycle_mean(m, tol);
  if (!tol.eq(lam, 1.0))
    throw Error("strict visualization requires lambda(A) = 1; rescale first",
                Error::Precondition);
  Matrix star = kleene_star(m, tol);
  const int n = m.n;
  Visualization vis;
  vis.x.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += star(i, j);
    vis.x[i] = s;  // >= star(i, i) = 1
  }
  vis.b = Matrix(n, m.sr);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vis.b(i, j) = m(i, j) * vis.x[j] / vis.x[i];

  // Verification. Bound first, then every near-one edge must lie on a cycle
  // of near-one edges; otherwise the scaling failed to separate a
  // non-critical edge from the critical ones.
  Digraph ones;
  ones.n = n;
  ones.succ.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = vis.b(i, j);
      if (v > 1.0 + tol.rel_eps + tol.abs_eps)
        throw Error("strict visualization failed: entry (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") exceeds 1",
                    Error::Internal);
      if (v >= 1.0 - tol.rel_eps) ones.succ[i].push_back(j);
    }
  std::vector<int> comp(n, -1);
  {
    auto sccs = strongly_connected_components(ones);
    for (int c = 0; c < static_cast<int>(sccs.size()); ++c)
      for (int v : sccs[c]) comp[v] = c;
    std::vector<bool> cyclic(sccs.size(), false);
    for (int i = 0; i < n; ++i)
      for (int j : ones.succ[i])
        if (comp[i] == comp[j]) cyclic[comp[i]] = true;
    for (int i = 0; i < n; ++i)
      for (int j : ones.succ[i])
        if (comp[i] != comp[j] || !cyclic[comp[i]])
          throw Error("strict visualization failed: edge (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ") is not on a critical cycle",
                      Error::Internal);
  }
  return vis;
}

// Critical graph of A: nodes and edges on cycles attaining lambda(A),
// together with the strongly connected components and their cyclic
// structure. Components are ordered by smallest node.
struct CritComponent {
  std::vector<int> nodes;
  CyclicStructure cyc;
};

struct CriticalGraph {
  std::vector<int> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<CritComponent> components;

  long long cyclicity() const {
    long long s = 1;
    for (const auto& c : components) s = lcm_ll(s, c.cyc.sigma);
    return s;
  }
};

inline CriticalGraph critical_graph(const Matrix& m, Tolerance tol = {}) {
  double lam = max_cycle_mean(m, tol);
  if (lam <= 0.0) throw Error("no critical graph (nilpotent pattern)", Error::Precondition);
  Visualization vis = visualize_strict(scaled(m, 1.0 / lam), tol);
  Matrix ones = booleanize(vis.b, tol);
  Digraph g = digraph_of(ones, tol);

  CriticalGraph crit;
  for (const auto& scc : strongly_connected_components(g)) {
    bool cyclic = scc.size() > 1 || g.has_edge(scc[0], scc[0]);
    if (!cyclic) continue;
    CritComponent comp;
    comp.nodes = scc;
    comp.cyc = cyclicity_of_component(g, scc);
    crit.components.push_back(std::move(comp));
  }
  std::sort(crit.components.begin(), crit.components.end(),
            [](const CritComponent& a, const CritComponent& b) {
              return a.nodes.front() < b.nodes.front();
            });
  for (const auto& comp : crit.components) {
    for (int v : comp.nodes) {
      crit.nodes.push_back(v);
      for (int u : g.succ[v])
        if (std::binary_search(comp.nodes.begin(), comp.nodes.end(), u))
          crit.edges.emplace_back(v, u);
    }
  }
  std::sort(crit.nodes.begin(), crit.nodes.end());
  std::sort(crit.edges.begin(), crit.edges.end());
  return crit;
}

namespace detail {

// t > rho(B) for nonnegative B iff tI - B is an M-matrix, iff Gaussian
// elimination without pivoting runs to completion with positive pivots.
inline bool shift_dominates(const Matrix& block, double t) {
  const int n = block.n;
  std::vector<double> c(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i * n + j] = (i == j ? t : 0.0) - block(i, j);
  for (int k = 0; k < n; ++k) {
    double piv = c[k * n + k];
    if (!(piv > 0.0)) return false;
    for (int i = k + 1; i < n; ++i) {
      double f = c[i * n + k] / piv;
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) c[i * n + j] -= f * c[k * n + j];
    }
  }
  return true;
}

}  // namespace detail

// Classical Perron root and vector of an irreducible nonnegative block.
// The root is found by bisecting on the M-matrix test for tI - B: the
// Perron root is exactly the threshold, the test is an O(n^3) pivot check,
// and the accuracy is independent of eigenvalue gaps (power iteration
// stalls when near-cyclic structure clusters the moduli). The vector comes
// from a few inverse-iteration solves at the converged upper bound.
inline double perron_root_plus(const Matrix& block, Vec* vector_out = nullptr) {
  const int n = block.n;
  if (n == 1) {
    if (vector_out) *vector_out = {1.0};
    return block(0, 0);
  }
  double scale = max_entry(block);
  if (scale <= 0.0) {
    if (vector_out) vector_out->assign(n, 1.0);
    return 0.0;
  }
  Matrix b = scaled(block, 1.0 / scale);

  double hi = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += b(i, j);
    hi = std::max(hi, row);
  }
  hi = hi * (1.0 + 1e-9) + 1e-12;  // strictly above the root
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (detail::shift_dominates(b, mid))
      hi = mid;
    else
      lo = mid;
  }

  if (vector_out) {
    double t = hi * (1.0 + 1e-12) + 1e-300;
    std::vector<Vec> m(n, Vec(n, 0.0));
    Vec x(n, 1.0);
    for (int step = 0; step < 3; ++step) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = (i == j ? t : 0.0) - b(i, j);
      x = detail::solve_linear(m, x);
      for (double& v : x) v = std::max(v, 0.0);
      x = normalized(x);
    }
    *vector_out = x;
  }
  return 0.5 * (lo + hi) * scale;
}

// Per-class Perron roots in both algebras and the spectral flags of the
// access-maximality conditions.
struct SpectralClassInfo {
  int class_id = 0;
  double rho_max = 0.0;
  double rho_plus = 0.0;
  bool is_spectral_max = false;
  bool is_spectral_plus = false;

  double rho(Semiring sr) const { return sr == Semiring::PlusTimes ? rho_plus : rho_max; }
  bool is_spectral(Semiring sr) const {
    return sr == Semiring::PlusTimes ? is_spectral_plus : is_spectral_max;
  }
};

inline std::vector<SpectralClassInfo> spectral_classes(const Matrix& m, const FrobeniusForm& fnf,
                                                       Tolerance tol = {}) {
  const int r = fnf.class_count();
  std::vector<SpectralClassInfo> info(r);
  for (int c = 0; c < r; ++c) {
    info[c].class_id = c;
    if (!fnf.nontrivial[c]) continue;
    Matrix block = principal_submatrix(m, fnf.classes[c]);
    info[c].rho_max = max_cycle_mean(block, tol);
    info[c].rho_plus = perron_root_plus(block);
  }
  for (int nu = 0; nu < r; ++nu) {
    if (tol.is_zero(info[nu].rho_max) && tol.is_zero(info[nu].rho_plus)) continue;
    bool ok_max = !tol.is_zero(info[nu].rho_max);
    bool ok_plus = !tol.is_zero(info[nu].rho_plus);
    for (int mu = 0; mu < r && (ok_max || ok_plus); ++mu) {
      if (mu == nu || !fnf.access[mu][nu]) continue;
      if (info[mu].rho_max > info[nu].rho_max && !tol.eq(info[mu].rho_max, info[nu].rho_max))
        ok_max = false;
      if (info[mu].rho_plus > info[nu].rho_plus || tol.eq(info[mu].rho_plus, info[nu].rho_plus))
        ok_plus = false;
    }
    info[nu].is_spectral_max = ok_max;
    info[nu].is_spectral_plus = ok_plus;
  }
  return info;
}

inline std::vector<SpectralClassInfo> spectral_classes(const Matrix& m, Tolerance tol = {}) {
  return spectral_classes(m, frobenius_form(m, tol), tol);
}

// One spectrum value with the spectral classes carrying it.
struct SpectrumEntry {
  double rho = 0.0;
  std::vector<int> classes;
};

inline std::vector<SpectrumEntry> spectrum_detail(const Matrix& m, Semiring sr,
                                                  const FrobeniusForm& fnf, Tolerance tol = {}) {
  auto info = spectral_classes(m, fnf, tol);
  std::vector<SpectrumEntry> entries;
  for (const auto& sc : info) {
    if (!sc.is_spectral(sr)) continue;
    double rho = sc.rho(sr);
    if (tol.is_zero(rho)) continue;
    bool merged = false;
    for (auto& e : entries)
      if (tol.eq(e.rho, rho)) {
        e.classes.push_back(sc.class_id);
        merged = true;
        break;
      }
    if (!merged) entries.push_back({rho, {sc.class_id}});
  }
  std::sort(entries.begin(), entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.rho > b.rho; });
  return entries;
}

// Lambda(A): the nonzero eigenvalues, descending.
inline std::vector<double> spectrum(const Matrix& m, Semiring sr, Tolerance tol = {}) {
  std::vector<double> out;
  for (const auto& e : spectrum_detail(m, sr, frobenius_form(m, tol), tol)) out.push_back(e.rho);
  return out;
}

// Reduction of the eigenproblem for an arbitrary eigenvalue to the principal
// one: A_rho is rho^{-1} A restricted to the indices that access an
// (A, rho)-spectral class, zero elsewhere, kept at full size.
struct RhoReduction {
  double rho = 0.0;
  std::vector<int> m_rho;
  Matrix a_rho;
};

inline RhoReduction rho_reduction(const Matrix& m, double rho, Semiring sr, Tolerance tol = {}) {
  FrobeniusForm fnf = frobenius_form(m, tol);
  auto entries = spectrum_detail(m, sr, fnf, tol);
  const SpectrumEntry* entry = nullptr;
  for (const auto& e : entries)
    if (tol.eq(e.rho, rho)) entry = &e;
  if (!entry) throw Error("rho is not in the spectrum", Error::InvalidArgument);

  RhoReduction red;
  red.rho = entry->rho;
  std::vector<bool> in(m.n, false);
  for (int i = 0; i < m.n; ++i)
    for (int nu : entry->classes)
      if (fnf.node_accesses(i, nu)) in[i] = true;
  for (int i = 0; i < m.n; ++i)
    if (in[i]) red.m_rho.push_back(i);

  red.a_rho = Matrix(m.n, sr);
  for (int i : red.m_rho)
    for (int j : red.m_rho) red.a_rho(i, j) = m(i, j) / red.rho;
  return red;
}

}  // namespace tropicore
