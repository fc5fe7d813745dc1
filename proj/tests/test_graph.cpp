#include <gtest/gtest.h>

#include <random>

#include "clipperplus/graph.hpp"
#include "oracles.hpp"

using namespace clipperplus;
using namespace clipperplus::testing;

namespace {

std::vector<Vertex> zero_based(std::initializer_list<Vertex> one_based) {
  std::vector<Vertex> out;
  for (Vertex v : one_based) out.push_back(v - 1);
  return out;
}

}  // namespace

TEST(Graph, FiveVertexAdjacencyMatchesMatrix) {
  const Graph g = five_vertex_graph();
  const int expected[5][5] = {
      {0, 0, 0, 1, 0}, {0, 0, 1, 0, 1}, {0, 1, 0, 0, 1}, {1, 0, 0, 0, 0}, {0, 1, 1, 0, 0},
  };
  ASSERT_EQ(g.size(), 5U);
  EXPECT_EQ(g.edge_count(), 4U);
  for (Vertex i = 0; i < 5; ++i)
    for (Vertex j = 0; j < 5; ++j) EXPECT_EQ(g.adjacent(i, j), expected[i][j] == 1) << i << "," << j;
}

TEST(Graph, EmptyEdgeList) {
  const Graph g = Graph::from_edge_list(3, std::vector<Edge>{});
  EXPECT_EQ(g.edge_count(), 0U);
  for (Vertex i = 0; i < 3; ++i)
    for (Vertex j = 0; j < 3; ++j) EXPECT_FALSE(g.adjacent(i, j));
}

TEST(Graph, RejectsSelfLoopAndOutOfRange) {
  EXPECT_THROW(Graph::from_edge_list(2, std::vector<Edge>{{1, 1}}), InputError);
  EXPECT_THROW(Graph::from_edge_list(2, std::vector<Edge>{{1, 3}}), InputError);
  EXPECT_THROW(Graph::from_edge_list(2, std::vector<Edge>{{0, 1}}), InputError);
  GraphBuilder b(3);
  EXPECT_THROW(b.add_edge(2, 2), InputError);
  EXPECT_THROW(b.add_edge(0, 3), InputError);
}

TEST(Graph, DuplicatesCollapseAndOrderIsIrrelevant) {
  const Graph a = Graph::from_edge_list(4, std::vector<Edge>{{1, 2}, {2, 1}, {3, 4}, {1, 2}});
  const Graph b = Graph::from_edge_list(4, std::vector<Edge>{{4, 3}, {2, 1}});
  EXPECT_EQ(a.edge_count(), 2U);
  EXPECT_EQ(a, b);
}

TEST(Graph, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 1 + seed * 3;
    const Graph g = random_graph(n, 0.1 + 0.015 * static_cast<double>(seed), seed);
    std::size_t pairs = 0;
    for (Vertex i = 0; i < n; ++i) {
      EXPECT_FALSE(g.adjacent(i, i));
      std::size_t deg = 0;
      for (Vertex j = 0; j < n; ++j) {
        EXPECT_EQ(g.adjacent(i, j), g.adjacent(j, i));
        if (g.adjacent(i, j)) {
          ++deg;
          if (i < j) ++pairs;
        }
      }
      EXPECT_EQ(g.degree(i), deg);
    }
    EXPECT_EQ(g.edge_count(), pairs);
  }
}

TEST(Graph, InducedSubgraphKeepsAdjacency) {
  const Graph g = random_graph(70, 0.4, 11);
  const std::vector<Vertex> keep{3, 5, 8, 13, 21, 34, 55, 64, 65, 69};
  const Graph h = g.induced(keep);
  ASSERT_EQ(h.size(), keep.size());
  for (Vertex i = 0; i < keep.size(); ++i)
    for (Vertex j = 0; j < keep.size(); ++j) EXPECT_EQ(h.adjacent(i, j), g.adjacent(keep[i], keep[j]));
}

TEST(CoreNumbers, FiveVertexExample) {
  EXPECT_EQ(core_numbers(five_vertex_graph()), (CoreNumbers{1, 2, 2, 1, 2}));
}

TEST(CoreNumbers, CompleteAndEdgeless) {
  EXPECT_EQ(core_numbers(complete_graph(4)), (CoreNumbers{3, 3, 3, 3}));
  EXPECT_EQ(core_numbers(edgeless_graph(3)), (CoreNumbers{0, 0, 0}));
}

TEST(CoreNumbers, MatchesNaivePeelingOn200RandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 50;
    const double p = static_cast<double>(rng() % 1001) / 1000.0;
    const Graph g = random_graph(n, p, rng());
    const CoreNumbers k = core_numbers(g);
    ASSERT_EQ(k, naive_core_numbers(g)) << "trial " << t << " n=" << n << " p=" << p;
    for (Vertex v = 0; v < n; ++v) EXPECT_LE(k[v], g.degree(v));
  }
}

TEST(CoreNumbers, MaxCoreBoundsCliqueNumber) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 18;
    const Graph g = random_graph(n, static_cast<double>(rng() % 100) / 100.0, rng());
    EXPECT_GE(max_core(core_numbers(g)) + 1, brute_force_omega(g)) << "trial " << t;
  }
}

TEST(Sparsity, Extremes) {
  EXPECT_DOUBLE_EQ(sparsity(complete_graph(5)), 0.0);
  EXPECT_DOUBLE_EQ(sparsity(edgeless_graph(4)), 1.0);
  EXPECT_DOUBLE_EQ(sparsity(five_vertex_graph()), 0.6);
  EXPECT_THROW(sparsity(edgeless_graph(1)), InputError);
  EXPECT_THROW(sparsity(edgeless_graph(0)), InputError);
}

TEST(Sparsity, ZeroOnlyForCompleteOneOnlyForEdgeless) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = random_graph(2 + seed % 12, 0.5, seed);
    const double s = sparsity(g);
    const std::size_t max_edges = g.size() * (g.size() - 1) / 2;
    EXPECT_EQ(s == 0.0, g.edge_count() == max_edges);
    EXPECT_EQ(s == 1.0, g.edge_count() == 0);
  }
}

TEST(ValidateClique, FiveVertexExamples) {
  const Graph g = five_vertex_graph();
  auto c = validate_clique(g, zero_based({2, 3, 5}));
  EXPECT_TRUE(c.is_clique);
  EXPECT_TRUE(c.is_maximal);
  c = validate_clique(g, zero_based({1, 4}));
  EXPECT_TRUE(c.is_clique);
  EXPECT_TRUE(c.is_maximal);
  c = validate_clique(g, zero_based({1, 2}));
  EXPECT_FALSE(c.is_clique);
  EXPECT_FALSE(c.is_maximal);
  c = validate_clique(g, zero_based({2, 3}));
  EXPECT_TRUE(c.is_clique);
  EXPECT_FALSE(c.is_maximal);
}

TEST(ValidateClique, EmptySetIsNotMaximalUnlessGraphEmpty) {
  EXPECT_TRUE(validate_clique(five_vertex_graph(), std::vector<Vertex>{}).is_clique);
  EXPECT_FALSE(validate_clique(five_vertex_graph(), std::vector<Vertex>{}).is_maximal);
  EXPECT_TRUE(validate_clique(edgeless_graph(0), std::vector<Vertex>{}).is_maximal);
}

TEST(ValidateClique, MaximalityAgreesWithScanAcrossWordBoundary) {
  // 130 vertices span three 64-bit words.
  const Graph g = random_graph(130, 0.7, 99);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    // random clique grown greedily from a random seed
    std::vector<Vertex> c{static_cast<Vertex>(rng() % g.size())};
    for (Vertex v = 0; v < g.size(); ++v) {
      if (rng() % 3 == 0) continue;
      bool ok = std::find(c.begin(), c.end(), v) == c.end();
      for (Vertex m : c) ok = ok && g.adjacent(m, v);
      if (ok) c.push_back(v);
    }
    bool extendable = false;
    for (Vertex v = 0; v < g.size() && !extendable; ++v) {
      if (std::find(c.begin(), c.end(), v) != c.end()) continue;
      bool all = true;
      for (Vertex m : c) all = all && g.adjacent(m, v);
      extendable = all;
    }
    const auto check = validate_clique(g, c);
    EXPECT_TRUE(check.is_clique);
    EXPECT_EQ(check.is_maximal, !extendable);
  }
}

TEST(Clique, NormalizesMembers) {
  const Clique c(std::vector<Vertex>{5, 1, 3, 1});
  EXPECT_EQ(c.members, (std::vector<Vertex>{1, 3, 5}));
  EXPECT_EQ(c.size(), 3U);
}
