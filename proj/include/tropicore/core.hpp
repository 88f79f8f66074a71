#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "tropicore/eigencones.hpp"

namespace tropicore {

// extremals[members[t]] maps to a positive multiple of
// extremals[members[(t+1) % cyclicity]] under A.
struct Orbit {
  double rho = 1.0;
  int ancestor = 0;
  int cyclicity = 1;
  std::vector<int> members;
};

// The core of A: intersection of the column spans of all powers, described
// by its extremal rays and the permutation A induces on them.
struct CoreDescription {
  Semiring algebra = Semiring::MaxTimes;
  int sigma_lambda = 1;
  std::vector<Vec> extremals;  // normalized
  std::vector<double> rho_of;  // eigenvalue each extremal belongs to
  std::vector<GeneratorProvenance> provenance;
  std::vector<Orbit> orbits;
  int census = 0;
};

inline CoreDescription compute_core(const Matrix& m, Semiring sr, Tolerance tol = {}) {
  CoreDescription core;
  core.algebra = sr;
  PeriodReport per = periods(m, sr, tol);
  core.sigma_lambda = per.sigma_lambda;

  for (const Eigencone& ec : sum_eigencone(m, per.sigma_lambda, sr, tol))
    for (std::size_t g = 0; g < ec.generators.size(); ++g) {
      core.extremals.push_back(ec.generators[g]);
      core.rho_of.push_back(ec.rho);
      core.provenance.push_back(ec.provenance[g]);
    }
  core.census = static_cast<int>(core.extremals.size());
  if (core.census == 0) return core;  // nilpotent pattern: the core is {0}

  Matrix a = m;
  a.sr = sr;
  // Ray matching needs headroom above the accuracy of the eigenvector
  // solvers feeding the generators.
  Tolerance match{std::max(tol.rel_eps, 1e-7), std::max(tol.abs_eps, 1e-10)};
  const int c = core.census;
  std::vector<int> succ(c, -1), hits(c, 0);
  for (int i = 0; i < c; ++i) {
    Vec w = mat_vec(a, core.extremals[i]);
    for (int j = 0; j < c; ++j)
      if (proportional(w, core.extremals[j], match)) {
        succ[i] = j;
        ++hits[j];
        break;
      }
    if (succ[i] < 0)
      throw Error("orbit closure failure: image of an extremal matches no extremal "
                  "(tolerance breach)",
                  Error::Internal);
  }
  for (int j = 0; j < c; ++j)
    if (hits[j] != 1)
      throw Error("extremal action is not a permutation (tolerance breach)", Error::Internal);

  std::vector<bool> seen(c, false);
  for (int i = 0; i < c; ++i) {
    if (seen[i]) continue;
    std::vector<int> cycle;
    for (int v = i; !seen[v]; v = succ[v]) {
      seen[v] = true;
      cycle.push_back(v);
    }
    // Start the cycle at its lexicographically smallest member.
    std::size_t best = 0;
    for (std::size_t t = 1; t < cycle.size(); ++t)
      if (std::lexicographical_compare(core.extremals[cycle[t]].begin(),
                                       core.extremals[cycle[t]].end(),
                                       core.extremals[cycle[best]].begin(),
                                       core.extremals[cycle[best]].end()))
        best = t;
    std::rotate(cycle.begin(), cycle.begin() + best, cycle.end());

    Orbit orb;
    orb.members = cycle;
    orb.cyclicity = static_cast<int>(cycle.size());
    orb.rho = core.rho_of[cycle.front()];
    orb.ancestor = core.provenance[cycle.front()].ancestor;
    core.orbits.push_back(std::move(orb));
  }
  std::sort(core.orbits.begin(), core.orbits.end(), [](const Orbit& a, const Orbit& b) {
    if (a.rho != b.rho) return a.rho > b.rho;
    return a.ancestor < b.ancestor;
  });
  return core;
}

// Apply A to a vector of the core; precondition checked by membership.
inline Vec act(const Matrix& m, const CoreDescription& core, const Vec& v, Tolerance tol = {}) {
  if (!cone_contains(core.extremals, v, core.algebra, tol))
    throw Error("vector is outside the core", Error::Precondition);
  Matrix a = m;
  a.sr = core.algebra;
  return mat_vec(a, v);
}

enum class PeriodicityClass {
  Irreducible,
  UltimatelyPeriodic,
  OrbitPeriodicCandidate,
  ColumnPeriodic,
  General,
};

inline const char* periodicity_name(PeriodicityClass c) {
  switch (c) {
    case PeriodicityClass::Irreducible: return "irreducible";
    case PeriodicityClass::UltimatelyPeriodic: return "ultimately-periodic";
    case PeriodicityClass::OrbitPeriodicCandidate: return "orbit-periodic-candidate";
    case PeriodicityClass::ColumnPeriodic: return "column-periodic";
    case PeriodicityClass::General: return "general";
  }
  return "?";
}

struct PeriodicityReport {
  PeriodicityClass kind = PeriodicityClass::General;
  bool undetermined_at_horizon = false;
  int horizon = 0;
  int stabilization_t = -1;  // first t with span(A^t) equal to the core, -1 if not reached
  bool core_reached = false;
};

namespace detail {

// Membership with exact support matching: coordinates that are exactly zero
// in the candidate must stay zero in the combination. This keeps a strictly
// positive but decaying coordinate (which never enters the cone) from being
// swallowed by the absolute tolerance floor.
inline bool member_exact_support(const std::vector<Vec>& gens, const Vec& z, double rel) {
  Vec combo(z.size(), 0.0);
  for (const auto& g : gens) {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.size(); ++j)
      if (g[j] != 0.0) alpha = std::min(alpha, z[j] / g[j]);
    if (std::isinf(alpha)) continue;
    for (std::size_t j = 0; j < z.size(); ++j) combo[j] = std::max(combo[j], alpha * g[j]);
  }
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] == 0.0) {
      if (combo[j] != 0.0) return false;
    } else if (std::abs(combo[j] - z[j]) > rel * z[j]) {
      return false;
    }
  }
  return true;
}

// Exact-support column periodicity: find the least period sigma <= max_p
// such that col(t + sigma) = r * col(t) with one ratio r, for all t from
// some threshold on, with at least two full periods in the window.
inline bool column_periodic(const std::vector<Vec>& cols, int max_p, double rel) {
  const int len = static_cast<int>(cols.size());
  for (int sigma = 1; sigma <= max_p; ++sigma) {
    if (2 * sigma >= len) break;
    int bad = -1;  // last t (0-based) where proportionality with a common ratio fails
    double ratio = 0.0;
    bool ratio_set = false;
    for (int t = len - sigma - 1; t >= 0; --t) {
      const Vec& a = cols[t];
      const Vec& b = cols[t + sigma];
      double r = 0.0;
      bool ok = true, got = false;
      for (std::size_t j = 0; j < a.size() && ok; ++j) {
        if ((a[j] == 0.0) != (b[j] == 0.0)) ok = false;
        else if (a[j] != 0.0) {
          double q = b[j] / a[j];
          if (!got) {
            r = q;
            got = true;
          } else if (std::abs(q - r) > rel * std::max(q, r)) {
            ok = false;
          }
        }
      }
      if (ok && !got) r = 0.0;  // zero column
      if (ok) {
        if (!ratio_set) {
          ratio = r;
          ratio_set = true;
        } else if (std::abs(r - ratio) > rel * std::max(std::abs(r), std::abs(ratio))) {
          ok = false;
        }
      }
      if (!ok) {
        bad = t;
        break;
      }
    }
    int threshold = bad + 1;
    if (threshold + 2 * sigma <= len) return true;
  }
  return false;
}

}  // namespace detail

// Empirical classification of the max-algebraic power sequence, together
// with whether the span chain reaches the core at the probed horizon.
// Probe vectors, when supplied, are tested for periodic orbits; the
// orbit-periodic verdict stays a candidate since probes cannot cover all of
// R^n_+.
inline PeriodicityReport classify_periodicity(const Matrix& m, Tolerance tol = {},
                                              int horizon = 0,
                                              const std::vector<Vec>& probes = {}) {
  if (m.sr != Semiring::MaxTimes)
    throw Error("periodicity classes are defined in max algebra only", Error::InvalidArgument);
  PeriodicityReport rep;
  if (horizon <= 0) horizon = std::max(48, std::min(2 * m.n * m.n + 2, 512));
  rep.horizon = horizon;

  FrobeniusForm fnf = frobenius_form(m, tol);
  double lam = max_cycle_mean(m, tol);

  if (tol.is_zero(lam)) {
    // Nilpotent pattern: powers vanish, the core is {0}.
    rep.kind = PeriodicityClass::UltimatelyPeriodic;
    Matrix p = m;
    for (int t = 1; t <= m.n + 1; ++t) {
      if (max_entry(p) == 0.0) {
        rep.stabilization_t = t;
        rep.core_reached = true;
        break;
      }
      p = mat_mul(p, m);
    }
    return rep;
  }

  auto info = spectral_classes(m, fnf, tol);
  bool ultimately = true;
  for (int c = 0; c < fnf.class_count(); ++c)
    if (fnf.nontrivial[c] && !tol.eq(info[c].rho_max, lam)) ultimately = false;

  Matrix b = scaled(m, 1.0 / lam);
  b.sr = Semiring::MaxTimes;
  std::vector<Matrix> pow;
  pow.reserve(horizon);
  pow.push_back(b);
  for (int t = 1; t < horizon; ++t) pow.push_back(mat_mul(pow.back(), b));

  const double rel = 1e-8;
  const int max_p = std::max(2, std::min(horizon / 3, 24));
  bool columns_ok = true;
  for (int j = 0; j < m.n && columns_ok; ++j) {
    std::vector<Vec> cols;
    cols.reserve(horizon);
    for (const Matrix& p : pow) cols.push_back(p.col(j));
    if (!detail::column_periodic(cols, max_p, rel)) columns_ok = false;
  }
  bool probes_ok = !probes.empty();
  for (const Vec& x : probes) {
    std::vector<Vec> orbit;
    orbit.reserve(horizon);
    Vec v = x;
    for (int t = 0; t < horizon; ++t) {
      v = mat_vec(b, v);
      orbit.push_back(v);
    }
    if (!detail::column_periodic(orbit, max_p, rel)) probes_ok = false;
  }

  if (fnf.class_count() == 1)
    rep.kind = PeriodicityClass::Irreducible;
  else if (ultimately)
    rep.kind = PeriodicityClass::UltimatelyPeriodic;
  else if (columns_ok && probes_ok)
    rep.kind = PeriodicityClass::OrbitPeriodicCandidate;
  else if (columns_ok)
    rep.kind = PeriodicityClass::ColumnPeriodic;
  else {
    rep.kind = PeriodicityClass::General;
    rep.undetermined_at_horizon = true;
  }

  // Finite stabilization: first power whose column span equals the core.
  CoreDescription core = compute_core(m, Semiring::MaxTimes, tol);
  for (int t = 1; t <= horizon && !rep.core_reached; ++t) {
    const Matrix& p = pow[t - 1];
    bool equal = true;
    for (int j = 0; j < m.n && equal; ++j) {
      Vec col = p.col(j);
      if (max_entry(col) == 0.0) continue;
      if (!detail::member_exact_support(core.extremals, normalized(col), rel)) equal = false;
    }
    std::vector<Vec> cols;
    for (int j = 0; j < m.n; ++j)
      if (max_entry(p.col(j)) > 0.0) cols.push_back(normalized(p.col(j)));
    for (std::size_t g = 0; g < core.extremals.size() && equal; ++g)
      if (!cone_contains(cols, core.extremals[g], Semiring::MaxTimes, tol)) equal = false;
    if (equal) {
      rep.stabilization_t = t;
      rep.core_reached = true;
    }
  }
  return rep;
}

}  // namespace tropicore
