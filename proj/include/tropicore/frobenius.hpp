#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "tropicore/digraph.hpp"
#include "tropicore/matrix.hpp"

namespace tropicore {

// Frobenius normal form: simultaneous row/column permutation to
// block-lower-triangular shape with irreducible diagonal blocks. Classes are
// listed so that an edge from a node of class mu to a node of class nu can
// exist only if mu >= nu in the listed order (initial classes come last).
struct FrobeniusForm {
  std::vector<int> perm;                          // perm[p] = original index at block position p
  std::vector<std::vector<int>> classes;          // node sets, FNF order, each sorted
  std::vector<int> class_of;                      // node -> class id
  std::vector<std::pair<int, int>> reduced_edges; // edges (mu, nu), mu != nu, of R(A)
  std::vector<std::vector<bool>> access;          // reflexive-transitive closure of R(A)
  std::vector<bool> nontrivial;                   // class has at least one edge

  int class_count() const { return static_cast<int>(classes.size()); }

  bool node_accesses(int i, int nu) const { return access[class_of[i]][nu]; }
};

inline FrobeniusForm frobenius_form(const Matrix& m, Tolerance tol = {}) {
  Digraph g = digraph_of(m, tol);
  FrobeniusForm f;
  f.classes = strongly_connected_components(g);
  const int r = f.class_count();

  f.class_of.assign(m.n, -1);
  for (int c = 0; c < r; ++c)
    for (int v : f.classes[c]) f.class_of[v] = c;

  f.perm.reserve(m.n);
  for (const auto& cls : f.classes)
    for (int v : cls) f.perm.push_back(v);

  f.nontrivial.assign(r, false);
  std::vector<std::vector<bool>> adj(r, std::vector<bool>(r, false));
  for (int i = 0; i < m.n; ++i)
    for (int j : g.succ[i]) {
      int mu = f.class_of[i], nu = f.class_of[j];
      if (mu == nu) {
        f.nontrivial[mu] = true;
      } else if (!adj[mu][nu]) {
        adj[mu][nu] = true;
        f.reduced_edges.emplace_back(mu, nu);
      }
    }
  std::sort(f.reduced_edges.begin(), f.reduced_edges.end());

  // Reflexive-transitive closure over the condensation.
  f.access = adj;
  for (int c = 0; c < r; ++c) f.access[c][c] = true;
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      if (f.access[i][k])
        for (int j = 0; j < r; ++j)
          if (f.access[k][j]) f.access[i][j] = true;
  return f;
}

// B(p, q) = A(perm[p], perm[q]).
inline Matrix permuted(const Matrix& m, const std::vector<int>& perm) {
  Matrix b(m.n, m.sr);
  for (int p = 0; p < m.n; ++p)
    for (int q = 0; q < m.n; ++q) b(p, q) = m(perm[p], perm[q]);
  return b;
}

inline Matrix principal_submatrix(const Matrix& m, const std::vector<int>& idx) {
  Matrix b(static_cast<int>(idx.size()), m.sr);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      b(static_cast<int>(i), static_cast<int>(j)) = m(idx[i], idx[j]);
  return b;
}

}  // namespace tropicore
