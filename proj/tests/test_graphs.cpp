#include <numeric>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "test_matrices.hpp"
#include "tropicore/frobenius.hpp"
#include "tropicore/oracle.hpp"

using namespace tropicore;

TEST_CASE("digraph of a matrix keeps exactly the nonzero entries") {
  Digraph g = digraph_of(Matrix::from_rows({{0, 1}, {1, 0}}, Semiring::MaxTimes));
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});

  Digraph h = digraph_of(Matrix::from_rows({{1, 1}, {0, 1}}, Semiring::MaxTimes));
  CHECK(h.edges() == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("digraph of the two-class reference matrix") {
  Digraph g = digraph_of(example2(Semiring::MaxTimes));
  for (auto [i, j] : std::vector<std::pair<int, int>>{
           {0, 1}, {1, 0}, {2, 2}, {3, 3}, {2, 3}, {3, 2}, {2, 0}, {2, 1}, {3, 0}, {3, 1}})
    CHECK(g.has_edge(i, j));
  CHECK(g.edge_count() == 10);
}

TEST_CASE("frobenius form of an irreducible matrix has one class") {
  FrobeniusForm f = frobenius_form(Matrix::from_rows({{0, 1}, {1, 0}}, Semiring::MaxTimes));
  REQUIRE(f.class_count() == 1);
  CHECK(f.classes[0] == std::vector<int>{0, 1});
}

TEST_CASE("frobenius form splits the reference matrices into their classes") {
  FrobeniusForm f1 = frobenius_form(example1(Semiring::MaxTimes));
  REQUIRE(f1.class_count() == 2);
  CHECK(f1.classes[0] == std::vector<int>{0});
  CHECK(f1.classes[1] == std::vector<int>{1, 2, 3, 4});
  CHECK(f1.access[1][0]);  // the big class reaches node 1
  CHECK_FALSE(f1.access[0][1]);

  FrobeniusForm f2 = frobenius_form(example2(Semiring::MaxTimes));
  REQUIRE(f2.class_count() == 2);
  CHECK(f2.classes[0] == std::vector<int>{0, 1});
  CHECK(f2.classes[1] == std::vector<int>{2, 3});
  CHECK(f2.access[1][0]);
  CHECK_FALSE(f2.access[0][1]);
}

TEST_CASE("permuted matrix is block lower triangular") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_structured(rng, 6, Semiring::MaxTimes);
    FrobeniusForm f = frobenius_form(a);
    Matrix p = permuted(a, f.perm);
    std::vector<int> class_at;
    for (int c = 0; c < f.class_count(); ++c)
      for (std::size_t i = 0; i < f.classes[c].size(); ++i) class_at.push_back(c);
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        if (class_at[i] < class_at[j]) CHECK(p(i, j) == 0.0);
    // access is a partial order on classes
    for (int x = 0; x < f.class_count(); ++x) {
      CHECK(f.access[x][x]);
      for (int y = 0; y < f.class_count(); ++y)
        if (x != y) CHECK_FALSE((f.access[x][y] && f.access[y][x]));
    }
  }
}

TEST_CASE("cyclicity of the four-cycle with its cyclic classes") {
  // Bare cycle 2 -> 3 -> 4 -> 5 -> 2 in 1-based labels.
  Matrix a(5, Semiring::MaxTimes);
  a(1, 2) = a(2, 3) = a(3, 4) = a(4, 1) = 1.0;
  Digraph g = digraph_of(a);
  CyclicStructure cs = cyclicity_of_component(g, {1, 2, 3, 4});
  REQUIRE(cs.sigma == 4);
  CHECK(cs.classes[0] == std::vector<int>{1});
  CHECK(cs.classes[1] == std::vector<int>{4});
  CHECK(cs.classes[2] == std::vector<int>{3});
  CHECK(cs.classes[3] == std::vector<int>{2});
  // every edge goes from C_t to C_{t-1 mod sigma}
  for (int t = 0; t < 4; ++t)
    for (int u : cs.classes[t])
      for (int v : g.succ[u]) {
        int tv = -1;
        for (int s = 0; s < 4; ++s)
          for (int w : cs.classes[s])
            if (w == v) tv = s;
        CHECK(tv == (t + 3) % 4);
      }
}

TEST_CASE("cyclicity of loops and complete graphs is one") {
  Matrix loop = Matrix::from_rows({{0.5}}, Semiring::MaxTimes);
  CHECK(cyclicity_of_component(digraph_of(loop), {0}).sigma == 1);

  Matrix k3(3, Semiring::MaxTimes);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) k3(i, j) = 1.0;
  CHECK(cyclicity_of_component(digraph_of(k3), {0, 1, 2}).sigma == 1);
}

TEST_CASE("trivial component has cyclicity one and a single class") {
  Matrix a(2, Semiring::MaxTimes);
  a(0, 1) = 1.0;
  CyclicStructure cs = cyclicity_of_component(digraph_of(a), {0});
  CHECK(cs.sigma == 1);
  CHECK(cs.classes == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("cyclicity rejects node sets that are not strongly connected") {
  Matrix a(2, Semiring::MaxTimes);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(cyclicity_of_component(digraph_of(a), {0, 1}), Error);
}

namespace {

Digraph four_cycle() {
  Digraph g;
  g.n = 4;
  g.succ = {{1}, {2}, {3}, {0}};
  return g;
}

}  // namespace

TEST_CASE("graph power of the four-cycle") {
  Digraph g = four_cycle();
  Digraph g2 = graph_power(g, 2);
  CHECK(g2.edges() == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}, {2, 0}, {3, 1}});
  CHECK(strongly_connected_components(g2).size() == 2);

  Digraph g4 = graph_power(g, 4);
  CHECK(g4.edges() == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});

  Digraph g1 = graph_power(g, 1);
  CHECK(g1.edges() == g.edges());
}

TEST_CASE("graph powers split into gcd(k, sigma) components covering cyclic classes") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Digraph g = random_strongly_connected(rng, n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    CyclicStructure cs = cyclicity_of_component(g, all);
    for (int k = 1; k <= 12; ++k) {
      Digraph gk = graph_power(g, k);
      auto comps = strongly_connected_components(gk);
      long long want = gcd_ll(k, cs.sigma);
      REQUIRE(static_cast<long long>(comps.size()) == want);
      // no access between distinct components
      std::vector<int> comp_of(n, -1);
      for (int c = 0; c < static_cast<int>(comps.size()); ++c)
        for (int v : comps[c]) comp_of[v] = c;
      for (int v = 0; v < n; ++v)
        for (int u : gk.succ[v]) CHECK(comp_of[v] == comp_of[u]);
      // each component is a union of sigma/gcd cyclic classes
      for (const auto& comp : comps) {
        std::size_t covered = 0;
        int met = 0;
        for (int t = 0; t < cs.sigma; ++t) {
          bool any = false;
          for (int v : comp)
            if (std::binary_search(cs.classes[t].begin(), cs.classes[t].end(), v)) any = true;
          if (any) {
            ++met;
            covered += cs.classes[t].size();
          }
        }
        CHECK(met == cs.sigma / want);
        CHECK(covered == comp.size());
      }
    }
  }
}

TEST_CASE("component containment between graph powers follows gcd divisibility") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Digraph g = random_strongly_connected(rng, n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    int sigma = cyclicity_of_component(g, all).sigma;
    for (int k = 1; k <= 8; ++k)
      for (int l = 1; l <= 8; ++l) {
        auto ck = strongly_connected_components(graph_power(g, k));
        auto cl = strongly_connected_components(graph_power(g, l));
        bool contained = true;
        for (const auto& comp_l : cl) {
          bool found = false;
          for (const auto& comp_k : ck)
            if (std::includes(comp_k.begin(), comp_k.end(), comp_l.begin(), comp_l.end()))
              found = true;
          if (!found) contained = false;
        }
        bool divides = gcd_ll(l, sigma) % gcd_ll(k, sigma) == 0;
        CHECK(contained == divides);
      }
  }
}

TEST_CASE("boolean power sequence is ultimately periodic within the quadratic bound") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Digraph g = random_strongly_connected(rng, n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    int sigma = cyclicity_of_component(g, all).sigma;
    int bound = (n - 1) * (n - 1) + 1;
    int len = 2 * bound + 2 * sigma + 2;
    std::vector<Matrix> seq;
    Matrix adj = adjacency_matrix(g);
    Matrix p = adj;
    for (int t = 1; t <= len; ++t) {
      seq.push_back(p);
      p = mat_mul(p, adj);
    }
    auto det = detect_period(seq, [](const Matrix& x, const Matrix& y) { return x.a == y.a; });
    REQUIRE(det.determined);
    CHECK(det.period == sigma);
    CHECK(det.threshold <= bound);
  }
}
