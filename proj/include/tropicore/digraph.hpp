#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "tropicore/matrix.hpp"

namespace tropicore {

// Digraph of a matrix: edge (i, j) iff a_ij is nonzero. Weights are kept in
// a list parallel to the successor list when the graph came from a matrix.
struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> succ;   // sorted successor lists
  std::vector<std::vector<double>> w;   // parallel weights; empty when unweighted

  bool has_edge(int i, int j) const {
    const auto& s = succ[i];
    return std::binary_search(s.begin(), s.end(), j);
  }

  int edge_count() const {
    int c = 0;
    for (const auto& s : succ) c += static_cast<int>(s.size());
    return c;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
      for (int j : succ[i]) e.emplace_back(i, j);
    return e;
  }
};

inline Digraph digraph_of(const Matrix& m, Tolerance tol = {}) {
  Digraph g;
  g.n = m.n;
  g.succ.resize(m.n);
  g.w.resize(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (!tol.is_zero(m(i, j))) {
        g.succ[i].push_back(j);
        g.w[i].push_back(m(i, j));
      }
  return g;
}

inline Matrix adjacency_matrix(const Digraph& g) {
  Matrix m(g.n, Semiring::Boolean);
  for (int i = 0; i < g.n; ++i)
    for (int j : g.succ[i]) m(i, j) = 1.0;
  return m;
}

// Graph whose edges are the length-k paths of g (Boolean adjacency power).
inline Digraph graph_power(const Digraph& g, long k) {
  if (k < 1) throw Error("graph power requires k >= 1", Error::InvalidArgument);
  Matrix p = mat_power(adjacency_matrix(g), k);
  Digraph h;
  h.n = g.n;
  h.succ.resize(g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (p(i, j) > 0.5) h.succ[i].push_back(j);
  return h;
}

// Tarjan's algorithm, iterative. Components come out in reverse topological
// order of the condensation: everything a component can reach is emitted
// before it. Node lists are sorted ascending.
inline std::vector<std::vector<int>> strongly_connected_components(const Digraph& g) {
  const int n = g.n;
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t child;
  };
  std::vector<Frame> call;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& fr = call.back();
      int v = fr.v;
      if (fr.child == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (fr.child < g.succ[v].size()) {
        int u = g.succ[v][fr.child++];
        if (index[u] == -1) {
          call.push_back({u, 0});
          descended = true;
          break;
        }
        if (on_stack[u]) low[v] = std::min(low[v], index[u]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        std::vector<int> scc;
        int u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = false;
          comp[u] = static_cast<int>(sccs.size());
          scc.push_back(u);
        } while (u != v);
        std::sort(scc.begin(), scc.end());
        sccs.push_back(std::move(scc));
      }
      call.pop_back();
      if (!call.empty()) {
        int parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return sccs;
}

inline bool is_strongly_connected(const Digraph& g, const std::vector<int>& nodes) {
  if (nodes.size() <= 1) return true;
  std::vector<int> local(g.n, -1);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) local[nodes[i]] = i;
  Digraph sub;
  sub.n = static_cast<int>(nodes.size());
  sub.succ.resize(sub.n);
  for (int i = 0; i < sub.n; ++i)
    for (int j : g.succ[nodes[i]])
      if (local[j] >= 0) sub.succ[i].push_back(local[j]);
  return strongly_connected_components(sub).size() == 1;
}

// Cyclicity of a strongly connected component and its cyclic classes.
// sigma is the gcd of all cycle lengths. Classes are indexed so that every
// edge leads from C_t to C_{(t-1) mod sigma}; equivalently, applying the
// matrix to a vector supported on C_t yields support C_{(t+1) mod sigma}.
// C_0 contains the smallest node of the component.
struct CyclicStructure {
  int sigma = 1;
  std::vector<std::vector<int>> classes;
};

inline CyclicStructure cyclicity_of_component(const Digraph& g, const std::vector<int>& nodes) {
  if (!is_strongly_connected(g, nodes))
    throw Error("nodes do not induce a strongly connected subgraph", Error::Precondition);
  CyclicStructure cs;
  std::vector<int> sorted_nodes = nodes;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());

  std::vector<int> in_set(g.n, 0);
  for (int v : sorted_nodes) in_set[v] = 1;

  // Trivial component: one node, no loop.
  if (sorted_nodes.size() == 1 && !g.has_edge(sorted_nodes[0], sorted_nodes[0])) {
    cs.sigma = 1;
    cs.classes = {sorted_nodes};
    return cs;
  }

  // BFS levels from the smallest node; sigma = gcd over induced edges (u, v)
  // of level(u) + 1 - level(v).
  std::vector<long long> level(g.n, -1);
  int root = sorted_nodes.front();
  level[root] = 0;
  std::vector<int> queue = {root};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int v : g.succ[u])
      if (in_set[v] && level[v] == -1) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
  }
  long long sigma = 0;
  for (int u : sorted_nodes)
    for (int v : g.succ[u])
      if (in_set[v]) sigma = gcd_ll(sigma, level[u] + 1 - level[v]);
  if (sigma == 0) sigma = 1;

  cs.sigma = static_cast<int>(sigma);
  cs.classes.assign(cs.sigma, {});
  for (int v : sorted_nodes) {
    long long idx = ((-level[v]) % sigma + sigma) % sigma;
    cs.classes[static_cast<std::size_t>(idx)].push_back(v);
  }
  return cs;
}

}  // namespace tropicore
