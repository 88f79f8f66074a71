#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tropicore/matrix.hpp"

namespace tropicore {

enum class Membership { Inside, Outside };

namespace detail {

// Solve M s = b by Gaussian elimination with partial pivoting. Near-singular
// pivots zero the corresponding solution component instead of failing; for
// the cone computations here that just drops a redundant generator.
inline Vec solve_linear(std::vector<Vec> m, Vec b) {
  const int n = static_cast<int>(b.size());
  std::vector<int> colidx(n);
  for (int i = 0; i < n; ++i) colidx[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    std::swap(m[k], m[piv]);
    std::swap(b[k], b[piv]);
    if (std::abs(m[k][k]) < 1e-300) continue;
    for (int i = k + 1; i < n; ++i) {
      double f = m[i][k] / m[k][k];
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      b[i] -= f * b[k];
    }
  }
  Vec s(n, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    if (std::abs(m[k][k]) < 1e-300) {
      s[k] = 0.0;
      continue;
    }
    double acc = b[k];
    for (int j = k + 1; j < n; ++j) acc -= m[k][j] * s[j];
    s[k] = acc / m[k][k];
  }
  return s;
}

// Lawson-Hanson nonnegative least squares on the column set `gens`.
// Returns the coefficient vector; the caller judges the residual.
inline Vec nnls(const std::vector<Vec>& gens, const Vec& z) {
  const int m = static_cast<int>(gens.size());
  const int n = static_cast<int>(z.size());
  Vec alpha(m, 0.0);
  if (m == 0) return alpha;

  std::vector<bool> passive(m, false);
  Vec resid = z;
  double scale = 0.0;
  for (const auto& g : gens)
    for (double x : g) scale = std::max(scale, std::abs(x));
  scale = std::max(scale, max_entry(z));
  const double w_eps = 1e-14 * std::max(scale, 1.0) * std::max(scale, 1.0) * n;

  auto ls_on_passive = [&](const std::vector<int>& idx) {
    const int p = static_cast<int>(idx.size());
    std::vector<Vec> gram(p, Vec(p, 0.0));
    Vec rhs(p, 0.0);
    for (int a = 0; a < p; ++a) {
      for (int b = a; b < p; ++b) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += gens[idx[a]][i] * gens[idx[b]][i];
        gram[a][b] = gram[b][a] = dot;
      }
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += gens[idx[a]][i] * z[i];
      rhs[a] = dot;
    }
    return solve_linear(gram, rhs);
  };

  for (int outer = 0; outer < 4 * m + 8; ++outer) {
    // Gradient of the least-squares objective.
    int best = -1;
    double best_w = w_eps;
    for (int j = 0; j < m; ++j) {
      if (passive[j]) continue;
      double wj = 0.0;
      for (int i = 0; i < n; ++i) wj += gens[j][i] * resid[i];
      if (wj > best_w) {
        best_w = wj;
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < 4 * m + 8; ++inner) {
      std::vector<int> idx;
      for (int j = 0; j < m; ++j)
        if (passive[j]) idx.push_back(j);
      if (idx.empty()) break;
      Vec s = ls_on_passive(idx);
      bool all_pos = true;
      for (double sv : s)
        if (sv <= 0.0) all_pos = false;
      if (all_pos) {
        for (std::size_t a = 0; a < idx.size(); ++a) alpha[idx[a]] = s[a];
        break;
      }
      // Step towards s until the first coefficient hits zero, then drop it.
      double t = 1.0;
      for (std::size_t a = 0; a < idx.size(); ++a)
        if (s[a] <= 0.0) {
          double denom = alpha[idx[a]] - s[a];
          if (denom > 0.0) t = std::min(t, alpha[idx[a]] / denom);
          else t = 0.0;
        }
      for (std::size_t a = 0; a < idx.size(); ++a) {
        alpha[idx[a]] += t * (s[a] - alpha[idx[a]]);
        if (s[a] <= 0.0 && alpha[idx[a]] <= 1e-14) {
          alpha[idx[a]] = 0.0;
          passive[idx[a]] = false;
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      double acc = z[i];
      for (int j = 0; j < m; ++j)
        if (alpha[j] != 0.0) acc -= alpha[j] * gens[j][i];
      resid[i] = acc;
    }
  }
  return alpha;
}

}  // namespace detail

// Max-times residuation: the largest coefficients alpha with
// alpha_i * g^i <= z componentwise; z is in the span iff their max
// combination reproduces z.
inline Vec residuation_coefficients(const std::vector<Vec>& gens, const Vec& z, Tolerance tol = {}) {
  Vec alpha(gens.size(), 0.0);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    double a = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.size(); ++j)
      if (!tol.is_zero(gens[i][j])) a = std::min(a, z[j] / gens[i][j]);
    alpha[i] = std::isinf(a) ? 0.0 : a;  // zero generator contributes nothing
  }
  return alpha;
}

inline Membership membership(const std::vector<Vec>& gens, const Vec& z, Semiring sr,
                             Tolerance tol = {}) {
  for (const auto& g : gens)
    if (g.size() != z.size()) throw Error("generator dimension mismatch", Error::InvalidArgument);

  if (sr == Semiring::PlusTimes) {
    Vec alpha = detail::nnls(gens, z);
    Vec combo(z.size(), 0.0);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (alpha[i] != 0.0)
        for (std::size_t j = 0; j < z.size(); ++j) combo[j] += alpha[i] * gens[i][j];
    double resid = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) resid = std::max(resid, std::abs(combo[j] - z[j]));
    return resid <= tol.abs_eps + tol.rel_eps * (1.0 + max_entry(z)) ? Membership::Inside
                                                                     : Membership::Outside;
  }

  Vec alpha = residuation_coefficients(gens, z, tol);
  Vec combo(z.size(), 0.0);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      combo[j] = std::max(combo[j], alpha[i] * gens[i][j]);
  return approx_eq(combo, z, tol) ? Membership::Inside : Membership::Outside;
}

inline bool cone_contains(const std::vector<Vec>& gens, const Vec& z, Semiring sr,
                          Tolerance tol = {}) {
  return membership(gens, z, sr, tol) == Membership::Inside;
}

inline bool cone_subset(const std::vector<Vec>& sub, const std::vector<Vec>& super, Semiring sr,
                        Tolerance tol = {}) {
  for (const auto& g : sub)
    if (!cone_contains(super, g, sr, tol)) return false;
  return true;
}

inline bool cone_equal(const std::vector<Vec>& a, const std::vector<Vec>& b, Semiring sr,
                       Tolerance tol = {}) {
  return cone_subset(a, b, sr, tol) && cone_subset(b, a, sr, tol);
}

// Positive-multiple test: equal supports and consistent componentwise ratio.
inline bool proportional(const Vec& x, const Vec& y, Tolerance tol = {}) {
  if (x.size() != y.size()) return false;
  Vec xn = normalized(x), yn = normalized(y);
  if (is_zero_vec(xn, tol) || is_zero_vec(yn, tol)) return is_zero_vec(xn, tol) == is_zero_vec(yn, tol);
  return approx_eq(xn, yn, tol);
}

// Keep exactly the generators that are not in the span of the others.
// Output is normalized and duplicate-free up to scaling.
inline std::vector<Vec> extremal_filter(const std::vector<Vec>& gens, Semiring sr,
                                        Tolerance tol = {}) {
  std::vector<Vec> work;
  for (const auto& g : gens) {
    if (is_zero_vec(g, tol)) continue;
    Vec gn = normalized(g);
    bool dup = false;
    for (const auto& h : work)
      if (approx_eq(gn, h, tol)) {
        dup = true;
        break;
      }
    if (!dup) work.push_back(std::move(gn));
  }

  std::vector<bool> keep(work.size(), true);
  for (std::size_t i = 0; i < work.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < work.size(); ++j)
      if (j != i && keep[j]) others.push_back(work[j]);
    if (cone_contains(others, work[i], sr, tol)) keep[i] = false;
  }

  std::vector<Vec> out;
  for (std::size_t i = 0; i < work.size(); ++i)
    if (keep[i]) out.push_back(work[i]);
  return out;
}

}  // namespace tropicore
