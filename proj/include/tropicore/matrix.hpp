#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "tropicore/semiring.hpp"

namespace tropicore {

using Vec = std::vector<double>;

// Dense square matrix over nonnegative finite reals, tagged with the
// semiring its products and powers are taken in.
struct Matrix {
  int n = 0;
  Semiring sr = Semiring::MaxTimes;
  std::vector<double> a;  // row-major

  Matrix() = default;
  Matrix(int n_, Semiring sr_) : n(n_), sr(sr_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  Vec col(int j) const {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec row(int i) const {
    Vec v(n);
    for (int j = 0; j < n; ++j) v[j] = (*this)(i, j);
    return v;
  }

  static Matrix identity(int n, Semiring sr) {
    Matrix m(n, sr);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows, Semiring sr) {
    Matrix m(static_cast<int>(rows.size()), sr);
    int i = 0;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != m.n)
        throw Error("matrix rows must all have length n", Error::InvalidArgument);
      int j = 0;
      for (double x : r) m(i, j++) = x;
      ++i;
    }
    validate(m);
    return m;
  }

  static void validate(const Matrix& m) {
    if (m.n < 1) throw Error("matrix dimension must be at least 1", Error::InvalidArgument);
    for (double x : m.a)
      if (!(x >= 0.0) || !std::isfinite(x))
        throw Error("matrix entries must be finite and nonnegative", Error::InvalidArgument);
  }
};

inline void check_finite(const Matrix& m) {
  for (double x : m.a)
    if (!std::isfinite(x)) throw Error("spectral blow-up; rescale input", Error::Divergence);
}

inline Matrix mat_mul(const Matrix& x, const Matrix& y) {
  if (x.n != y.n || x.sr != y.sr)
    throw Error("matrix product needs matching dimension and semiring", Error::InvalidArgument);
  Matrix z(x.n, x.sr);
  const int n = x.n;
  if (x.sr == Semiring::PlusTimes) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double xa = x(i, k);
        if (xa == 0.0) continue;
        for (int j = 0; j < n; ++j) z(i, j) += xa * y(k, j);
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double xa = x(i, k);
        if (xa == 0.0) continue;
        for (int j = 0; j < n; ++j) {
          double c = xa * y(k, j);
          if (c > z(i, j)) z(i, j) = c;
        }
      }
  }
  return z;
}

inline Vec mat_vec(const Matrix& m, const Vec& v) {
  if (static_cast<int>(v.size()) != m.n)
    throw Error("matrix-vector dimension mismatch", Error::InvalidArgument);
  Vec z(m.n, 0.0);
  for (int i = 0; i < m.n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m.n; ++j) {
      double c = m(i, j) * v[j];
      acc = m.sr == Semiring::PlusTimes ? acc + c : std::max(acc, c);
    }
    z[i] = acc;
  }
  return z;
}

// A^k by repeated squaring, in the matrix's semiring.
inline Matrix mat_power(const Matrix& m, long k) {
  if (k < 1) throw Error("matrix power requires k >= 1", Error::InvalidArgument);
  Matrix base = m;
  Matrix acc;
  bool have = false;
  while (k > 0) {
    if (k & 1) {
      acc = have ? mat_mul(acc, base) : base;
      have = true;
      check_finite(acc);
    }
    k >>= 1;
    if (k > 0) {
      base = mat_mul(base, base);
      check_finite(base);
    }
  }
  return acc;
}

// Threshold at 1: entries within rel_eps of 1 map to 1, the rest to 0.
// Defined only for sub-unitized input.
inline Matrix booleanize(const Matrix& m, Tolerance tol = {}) {
  Matrix b(m.n, Semiring::Boolean);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      double x = m(i, j);
      if (x > 1.0 + tol.rel_eps + tol.abs_eps)
        throw Error("matrix not sub-unitized; apply visualization scaling first",
                    Error::Precondition);
      b(i, j) = x >= 1.0 - tol.rel_eps ? 1.0 : 0.0;
    }
  return b;
}

inline Vec booleanize(const Vec& v, Tolerance tol = {}) {
  Vec b(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 1.0 + tol.rel_eps + tol.abs_eps)
      throw Error("vector not sub-unitized; apply visualization scaling first",
                  Error::Precondition);
    b[i] = v[i] >= 1.0 - tol.rel_eps ? 1.0 : 0.0;
  }
  return b;
}

inline double max_entry(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

inline double max_entry(const Matrix& m) { return max_entry(m.a); }

inline bool is_zero_vec(const Vec& v, Tolerance tol = {}) {
  for (double x : v)
    if (!tol.is_zero(x)) return false;
  return true;
}

// Scale so the maximum entry is 1; the zero vector is left alone.
inline Vec normalized(Vec v) {
  double m = max_entry(v);
  if (m > 0.0)
    for (double& x : v) x /= m;
  return v;
}

inline Matrix scaled(Matrix m, double factor) {
  for (double& x : m.a) x *= factor;
  return m;
}

inline std::vector<int> supp(const Vec& v, Tolerance tol = {}) {
  std::vector<int> s;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!tol.is_zero(v[i])) s.push_back(i);
  return s;
}

inline bool approx_eq(const Vec& x, const Vec& y, Tolerance tol = {}) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!tol.eq(x[i], y[i])) return false;
  return true;
}

inline bool approx_eq(const Matrix& x, const Matrix& y, Tolerance tol = {}) {
  return x.n == y.n && approx_eq(x.a, y.a, tol);
}

}  // namespace tropicore
