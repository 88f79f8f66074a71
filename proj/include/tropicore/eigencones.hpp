#pragma once

#include <algorithm>
#include <vector>

#include "tropicore/algebra.hpp"
#include "tropicore/spectral.hpp"

namespace tropicore {

// Where a generator comes from: the spectral class (nonnegative algebra) or
// critical component (max algebra) of the base matrix it is derived from,
// plus the cyclic class of that ancestor met by the generator's support.
struct GeneratorProvenance {
  int ancestor = 0;
  int cyclic_class = 0;
};

struct Eigencone {
  double rho = 1.0;
  long k = 1;
  Semiring sr = Semiring::MaxTimes;
  std::vector<Vec> generators;              // normalized, extremal
  std::vector<GeneratorProvenance> provenance;  // parallel to generators
};

namespace detail {

// Solve (I - M) x = b for an irreducible block with spectral radius < 1.
inline Vec solve_i_minus(const Matrix& block, const Vec& b) {
  const int n = block.n;
  if (n <= 64) {
    std::vector<Vec> m(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = (i == j ? 1.0 : 0.0) - block(i, j);
    return solve_linear(std::move(m), b);
  }
  // Neumann iteration x <- b + M x; converges since rho(M) < 1.
  Vec x = b;
  for (int it = 0; it < 100000; ++it) {
    Vec y = b;
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) y[i] += block(i, j) * x[j];
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x = std::move(y);
    if (delta <= 1e-15 * (1.0 + max_entry(x))) break;
  }
  return x;
}

}  // namespace detail

// Extremal generators of the principal eigencone in nonnegative algebra:
// one per spectral class with Perron root 1. The generator is the class
// Perron vector extended upward through the accessing classes by solving
// (I - A_KK) x_K = (inflow), which is valid because every accessing class
// has Perron root strictly below 1.
inline Eigencone fv_generators_plus(const Matrix& m, Tolerance tol = {}) {
  FrobeniusForm fnf = frobenius_form(m, tol);
  auto info = spectral_classes(m, fnf, tol);

  // The principal classes are selected against the largest spectral root
  // rather than the literal 1.0: powers of a reduction carry the base
  // eigensolver error amplified k-fold, while distinct roots stay far apart.
  double principal = 0.0;
  for (const auto& sc : info)
    if (sc.is_spectral_plus) principal = std::max(principal, sc.rho_plus);
  const double window = 1e-7 * principal;

  Eigencone ec;
  ec.sr = Semiring::PlusTimes;
  for (int mu = 0; mu < fnf.class_count(); ++mu) {
    if (!info[mu].is_spectral_plus || info[mu].rho_plus < principal - window) continue;

    Vec x(m.n, 0.0);
    Vec v;
    perron_root_plus(principal_submatrix(m, fnf.classes[mu]), &v);
    for (std::size_t i = 0; i < fnf.classes[mu].size(); ++i) x[fnf.classes[mu][i]] = v[i];

    for (int k = mu + 1; k < fnf.class_count(); ++k) {
      if (!fnf.access[k][mu]) continue;
      if (info[k].rho_plus >= principal - window)
        throw Error("accessing class with Perron root at the principal value; "
                    "spectral structure inconsistent",
                    Error::Internal);
      const auto& nodes = fnf.classes[k];
      Vec b(nodes.size(), 0.0);
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int j = 0; j < m.n; ++j)
          if (fnf.class_of[j] != k) b[i] += m(nodes[i], j) * x[j];
      if (is_zero_vec(b, tol)) continue;  // class does not feed this generator
      Vec xk = detail::solve_i_minus(principal_submatrix(m, nodes), b);
      for (std::size_t i = 0; i < nodes.size(); ++i) x[nodes[i]] = xk[i];
    }
    ec.generators.push_back(normalized(x));
    ec.provenance.push_back({mu, 0});
  }
  return ec;
}

// Extremal generators of the principal eigencone in max algebra: one Kleene
// star column per critical component (the columns within a component are
// proportional; the smallest index is the canonical pick).
inline Eigencone fv_generators_max(const Matrix& m, Tolerance tol = {}) {
  double lam = max_cycle_mean(m, tol);
  if (!tol.eq(lam, 1.0))
    throw Error("max eigencone generators require lambda(A) = 1; rescale first",
                Error::Precondition);
  CriticalGraph crit = critical_graph(m, tol);
  Matrix star = kleene_star(m, tol);

  Eigencone ec;
  ec.sr = Semiring::MaxTimes;
  for (int c = 0; c < static_cast<int>(crit.components.size()); ++c) {
    ec.generators.push_back(normalized(star.col(crit.components[c].nodes.front())));
    ec.provenance.push_back({c, 0});
  }
  return ec;
}

namespace detail {

inline int cyclic_class_of(const CyclicStructure& cyc, int node) {
  for (int t = 0; t < cyc.sigma; ++t)
    if (std::binary_search(cyc.classes[t].begin(), cyc.classes[t].end(), node)) return t;
  return 0;
}

}  // namespace detail

// Generators of V(A^k, rho^k), computed on the k-th power of the
// rho-reduction; provenance maps each generator back to the spectral class
// or critical component of the reduction it is derived from.
inline Eigencone eigencone_of_power(const Matrix& m, double rho, long k, Semiring sr,
                                    Tolerance tol = {}) {
  RhoReduction red = rho_reduction(m, rho, sr, tol);
  Matrix bk = mat_power(red.a_rho, k);
  Eigencone ec;

  if (sr == Semiring::MaxTimes) {
    ec = fv_generators_max(bk, tol);
    CriticalGraph base = critical_graph(red.a_rho, tol);
    CriticalGraph derived = critical_graph(bk, tol);
    for (std::size_t g = 0; g < ec.generators.size(); ++g) {
      const auto& dn = derived.components[ec.provenance[g].ancestor].nodes;
      int anc = -1;
      for (int c = 0; c < static_cast<int>(base.components.size()); ++c)
        if (std::binary_search(base.components[c].nodes.begin(), base.components[c].nodes.end(),
                               dn.front()))
          anc = c;
      if (anc < 0)
        throw Error("derived critical component has no ancestor", Error::Internal);
      int cls = detail::cyclic_class_of(base.components[anc].cyc, dn.front());
      for (int v : dn) cls = std::min(cls, detail::cyclic_class_of(base.components[anc].cyc, v));
      ec.provenance[g] = {anc, cls};
    }
  } else {
    ec = fv_generators_plus(bk, tol);
    FrobeniusForm fnf_a = frobenius_form(m, tol);
    FrobeniusForm fnf_k = frobenius_form(bk, tol);
    Digraph ga = digraph_of(m, tol);
    std::vector<CyclicStructure> cyc_cache(fnf_a.class_count());
    std::vector<bool> have(fnf_a.class_count(), false);
    for (std::size_t g = 0; g < ec.generators.size(); ++g) {
      int node = fnf_k.classes[ec.provenance[g].ancestor].front();
      int anc = fnf_a.class_of[node];
      if (!have[anc]) {
        cyc_cache[anc] = cyclicity_of_component(ga, fnf_a.classes[anc]);
        have[anc] = true;
      }
      int cls = detail::cyclic_class_of(cyc_cache[anc], node);
      for (int v : fnf_k.classes[ec.provenance[g].ancestor])
        cls = std::min(cls, detail::cyclic_class_of(cyc_cache[anc], v));
      ec.provenance[g] = {anc, cls};
    }
  }

  ec.rho = red.rho;
  ec.k = k;
  ec.sr = sr;

  std::vector<std::size_t> order(ec.generators.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ec.provenance[a].ancestor != ec.provenance[b].ancestor)
      return ec.provenance[a].ancestor < ec.provenance[b].ancestor;
    return ec.provenance[a].cyclic_class < ec.provenance[b].cyclic_class;
  });
  Eigencone sorted = ec;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.generators[i] = ec.generators[order[i]];
    sorted.provenance[i] = ec.provenance[order[i]];
  }
  return sorted;
}

// Periods of the eigencone sequences: per eigenvalue the lcm of cyclicities
// of its spectral classes (nonnegative) or of the critical graph of the
// reduction (max); sigma_lambda is the lcm over the spectrum.
struct PeriodReport {
  std::vector<std::pair<double, int>> sigma_rho;  // descending rho
  int sigma_lambda = 1;
};

inline PeriodReport periods(const Matrix& m, Semiring sr, Tolerance tol = {}) {
  FrobeniusForm fnf = frobenius_form(m, tol);
  auto entries = spectrum_detail(m, sr, fnf, tol);
  PeriodReport rep;
  Digraph g = digraph_of(m, tol);
  long long total = 1;
  for (const auto& e : entries) {
    long long s = 1;
    if (sr == Semiring::PlusTimes) {
      for (int nu : e.classes)
        s = lcm_ll(s, cyclicity_of_component(g, fnf.classes[nu]).sigma);
    } else {
      s = critical_graph(rho_reduction(m, e.rho, sr, tol).a_rho, tol).cyclicity();
    }
    rep.sigma_rho.emplace_back(e.rho, static_cast<int>(s));
    total = lcm_ll(total, s);
  }
  rep.sigma_lambda = static_cast<int>(total);
  return rep;
}

// V^Sigma(A^k) as the collection of eigencones over the spectrum; the union
// of their generator lists is the extremal set of the Minkowski sum.
inline std::vector<Eigencone> sum_eigencone(const Matrix& m, long k, Semiring sr,
                                            Tolerance tol = {}) {
  std::vector<Eigencone> cones;
  for (double rho : spectrum(m, sr, tol))
    cones.push_back(eigencone_of_power(m, rho, k, sr, tol));
  return cones;
}

}  // namespace tropicore
