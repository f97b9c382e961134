#include <vector>

#include "doctest.h"
#include "qexpand/graphs.hpp"

using namespace qexpand;

namespace {

/// Cubic graph with no perfect matching: a center vertex joined to three
/// 5-vertex gadgets (K4 with one edge subdivided, the subdivision vertex
/// wired to the center).  Each gadget has odd size and a single outside edge,
/// so at most one of the three can be fully matched.
Graph cubic_without_perfect_matching() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 3; ++i) {
    const int u = 1 + 5 * i, v = u + 1, x = u + 2, y = u + 3, w = u + 4;
    edges.insert(edges.end(), {{u, x}, {u, y}, {v, x}, {v, y}, {x, y}, {w, u}, {w, v}, {0, w}});
  }
  return Graph::from_edges(16, edges);
}

}  // namespace

TEST_CASE("edge-list construction normalizes and validates") {
  const Graph g = Graph::from_edges(3, {{2, 0}, {0, 1}});
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
  CHECK(g.adjacency()(1, 0) == 1.0);
  CHECK_FALSE(g.regular_degree().has_value());
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), Error);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5}}), Error);
}

TEST_CASE("corpus constructors have the expected shapes") {
  CHECK(cycle_graph(6).edges.size() == 6);
  CHECK(*cycle_graph(6).regular_degree() == 2);
  CHECK(complete_graph(5).edges.size() == 10);
  const Graph p = petersen_graph();
  CHECK(p.n == 10);
  CHECK(p.edges.size() == 15);
  CHECK(*p.regular_degree() == 3);
  CHECK(p.is_connected());
  const Graph q3 = hypercube_graph(3);
  CHECK(q3.n == 8);
  CHECK(q3.edges.size() == 12);
  CHECK(*q3.regular_degree() == 3);
}

TEST_CASE("random regular graphs are simple, connected, and seed-deterministic") {
  const Graph a = random_regular_graph(12, 4, 42);
  const Graph b = random_regular_graph(12, 4, 42);
  CHECK(a.edges == b.edges);
  CHECK(*a.regular_degree() == 4);
  CHECK(a.is_connected());
  const Graph c = random_regular_graph(12, 4, 43);
  CHECK(*c.regular_degree() == 4);
  CHECK_THROWS_AS(random_regular_graph(5, 3, 1), Error);  // odd nd
}

TEST_CASE("expansion constant by exhaustive cuts") {
  CHECK(expansion_constant(complete_graph(4)) == doctest::Approx(2.0));
  CHECK(expansion_constant(cycle_graph(6)) == doctest::Approx(2.0 / 3.0));
  CHECK(expansion_constant(petersen_graph()) == doctest::Approx(1.0));
  CHECK_THROWS_WITH_AS(expansion_constant(cycle_graph(25)), doctest::Contains("TooLarge"),
                       Error);
}

TEST_CASE("spectral data: descending eigenvalues and connectivity flags") {
  const SpectralData c5 = spectral_data(cycle_graph(5));
  REQUIRE(c5.eigenvalues.size() == 5);
  CHECK(c5.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c5.eigenvalues[1] == doctest::Approx(0.6180339887498949).epsilon(1e-10));
  CHECK(c5.eigenvalues[2] == doctest::Approx(0.6180339887498949).epsilon(1e-10));
  CHECK(c5.eigenvalues[3] == doctest::Approx(-1.6180339887498949).epsilon(1e-10));
  CHECK(c5.eigenvalues[4] == doctest::Approx(-1.6180339887498949).epsilon(1e-10));
  CHECK(c5.lambda2 == doctest::Approx(0.6180339887498949).epsilon(1e-10));
  CHECK(c5.connected);

  // Two disjoint edges: spectrum {1, 1, -1, -1}, disconnected.
  const Graph two_k2 = Graph::from_edges(4, {{0, 1}, {2, 3}});
  const SpectralData sd = spectral_data(two_k2);
  CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sd.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(sd.eigenvalues[3] == doctest::Approx(-1.0));
  CHECK_FALSE(sd.connected);
  CHECK(sd.lambda2 == doctest::Approx(1.0));
}

TEST_CASE("Cheeger bounds on the frozen corpus") {
  struct Row {
    Graph g;
    double h, lambda2;
  };
  const std::vector<Row> corpus = {
      {cycle_graph(5), 1.0, 0.6180339887498949},
      {cycle_graph(6), 2.0 / 3.0, 1.0},
      {cycle_graph(7), 2.0 / 3.0, 1.2469796037174672},
      {cycle_graph(8), 0.5, 1.4142135623730951},
      {complete_graph(4), 2.0, -1.0},
      {complete_graph(6), 3.0, -1.0},
      {petersen_graph(), 1.0, 1.0},
      {hypercube_graph(3), 1.0, 1.0},
  };
  for (const auto& row : corpus) {
    const CheegerReport r = check_cheeger(row.g);
    CHECK(r.h == doctest::Approx(row.h).epsilon(1e-9));
    CHECK(r.lambda2 == doctest::Approx(row.lambda2).epsilon(1e-9));
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
    CHECK(r.mohar_ok);
  }
  // Spot-check the bound values themselves on the 5-cycle.
  const CheegerReport c5 = check_cheeger(cycle_graph(5));
  CHECK(c5.lower == doctest::Approx(0.6909830056250526).epsilon(1e-10));
  CHECK(c5.upper == doctest::Approx(2.3511410091698925).epsilon(1e-10));
  CHECK(c5.mohar == doctest::Approx(1.9021130325903071).epsilon(1e-10));
  // The bound is tight on complete graphs and the Petersen graph.
  CHECK(check_cheeger(complete_graph(4)).lower == doctest::Approx(2.0));
  CHECK(check_cheeger(petersen_graph()).lower == doctest::Approx(1.0));

  CHECK_THROWS_WITH_AS(check_cheeger(Graph::from_edges(4, {{0, 1}, {2, 3}})),
                       doctest::Contains("NotConnected"), Error);
  CHECK_THROWS_WITH_AS(check_cheeger(Graph::from_edges(3, {{0, 1}})),
                       doctest::Contains("NotRegular"), Error);
}

TEST_CASE("Cayley graph of S3 with transpositions is complete bipartite") {
  const FiniteGroup G = FiniteGroup::from_permutation_generators({{1, 0, 2}, {1, 2, 0}});
  const std::vector<int> T = named_element_set(G, "transpositions");
  const Graph cay = cayley_graph(G, T);
  CHECK(cay.n == 6);
  CHECK(*cay.regular_degree() == 3);
  const SpectralData sd = spectral_data(cay);
  CHECK(sd.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sd.eigenvalues[1] == doctest::Approx(0.0));
  CHECK(sd.eigenvalues[4] == doctest::Approx(0.0));
  CHECK(sd.eigenvalues[5] == doctest::Approx(-3.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(cayley_graph(G, {0, 1}), doctest::Contains("ContainsIdentity"), Error);
  CHECK_THROWS_WITH_AS(cayley_graph(G, {2}), doctest::Contains("NotSymmetric"), Error);
}

TEST_CASE("Schreier graph on cosets counts generator moves with loops") {
  const FiniteGroup G = FiniteGroup::from_permutation_generators({{1, 0, 2}, {1, 2, 0}});
  const std::vector<int> T = named_element_set(G, "transpositions");
  const SchreierGraph sg = schreier_graph(G, {0, 1}, T);
  REQUIRE(sg.coset_partition.size() == 3);
  // Each transposition either fixes a coset (loop) or swaps the other two:
  // the action on three points gives the all-ones matrix.
  for (int i = 0; i < 3; ++i) {
    int row = 0;
    for (int j = 0; j < 3; ++j) {
      CHECK(sg.weighted(i, j) == 1);
      row += sg.weighted(i, j);
    }
    CHECK(row == 3);
  }
  CHECK(sg.simple.edges.size() == 3);  // triangle after dropping loops
}

TEST_CASE("cycle covers: sum of permutation matrices reproduces the adjacency") {
  for (const Graph& g : {cycle_graph(6), complete_graph(5), petersen_graph(),
                         hypercube_graph(3), random_regular_graph(12, 4, 7)}) {
    const int d = *g.regular_degree();
    const CycleCoverDecomposition cover = cycle_cover_decomposition(g, 42);
    REQUIRE(static_cast<int>(cover.perms.size()) == d);
    RMat total = RMat::Zero(g.n, g.n);
    for (const auto& perm : cover.perms) total += permutation_matrix(perm);
    CHECK(max_abs(total - g.adjacency()) == 0.0);
    // Adjacent entries pair a 2-factor with its inverse.
    for (int k = 0; k + 1 < 2 * (d / 2); k += 2)
      for (int v = 0; v < g.n; ++v) CHECK(cover.perms[k + 1][cover.perms[k][v]] == v);
    if (d % 2 == 1) {
      const auto& last = cover.perms.back();
      for (int v = 0; v < g.n; ++v) {
        CHECK(last[last[v]] == v);  // involution
        CHECK(last[v] != v);        // fixed-point-free
      }
    }
    // No two permutations share an arc (needed for Kraus orthogonality
    // downstream): images at every vertex are pairwise distinct.
    for (std::size_t k = 0; k < cover.perms.size(); ++k)
      for (std::size_t l = k + 1; l < cover.perms.size(); ++l)
        for (int v = 0; v < g.n; ++v) CHECK(cover.perms[k][v] != cover.perms[l][v]);
  }
}

TEST_CASE("cycle covers are seed-deterministic") {
  const auto a = cycle_cover_decomposition(petersen_graph(), 5);
  const auto b = cycle_cover_decomposition(petersen_graph(), 5);
  CHECK(a.perms == b.perms);
}

TEST_CASE("cycle cover refuses graphs without the needed structure") {
  CHECK_THROWS_WITH_AS(cycle_cover_decomposition(Graph::from_edges(3, {{0, 1}}), 1),
                       doctest::Contains("NotRegular"), Error);
  const Graph g = cubic_without_perfect_matching();
  REQUIRE(*g.regular_degree() == 3);
  CHECK_THROWS_WITH_AS(cycle_cover_decomposition(g, 1),
                       doctest::Contains("perfect matching"), Error);
}
