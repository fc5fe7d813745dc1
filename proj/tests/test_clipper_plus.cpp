#include <gtest/gtest.h>

#include <random>

#include "clipperplus/clipper_plus.hpp"
#include "clipperplus/exact.hpp"
#include "oracles.hpp"

using namespace clipperplus;
using namespace clipperplus::testing;

TEST(Exact, FiveVertexExample) {
  EXPECT_EQ(max_clique_exact(five_vertex_graph()).members, (std::vector<Vertex>{1, 2, 4}));
}

TEST(Exact, TrivialGraphs) {
  EXPECT_EQ(max_clique_exact(complete_graph(6)).size(), 6U);
  EXPECT_EQ(max_clique_exact(edgeless_graph(5)).size(), 1U);
  EXPECT_TRUE(max_clique_exact(edgeless_graph(0)).empty());
}

TEST(Exact, MatchesBruteForceOn200RandomGraphs) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 14;
    const Graph g = random_graph(n, static_cast<double>(rng() % 1001) / 1000.0, rng());
    const Clique c = max_clique_exact(g);
    ASSERT_TRUE(validate_clique(g, c).is_clique);
    EXPECT_EQ(c.size(), brute_force_omega(g)) << "trial " << t;
  }
}

TEST(Exact, PlantedCliqueInLargerGraph) {
  std::mt19937_64 rng(2);
  const std::size_t n = 150;
  GraphBuilder b(n);
  const Graph base = random_graph(n, 0.3, 77);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (base.adjacent(i, j)) b.add_edge(i, j);
  std::vector<Vertex> planted;
  for (Vertex v = 0; v < n; v += 7) planted.push_back(v);
  for (std::size_t a = 0; a < planted.size(); ++a)
    for (std::size_t c = a + 1; c < planted.size(); ++c) b.add_edge(planted[a], planted[c]);
  const Graph g = std::move(b).build();
  EXPECT_EQ(max_clique_exact(g).size(), planted.size());
}

TEST(Exact, BudgetExhaustionThrows) {
  EXPECT_THROW(max_clique_exact(random_graph(120, 0.9, 5), 10), ResourceError);
}

TEST(Prune, FiveVertexThresholds) {
  const Graph g = five_vertex_graph();
  const CoreNumbers k = core_numbers(g);
  EXPECT_TRUE(prune_by_core(g, k, 3).empty());
  const auto p2 = prune_by_core(g, k, 2);
  EXPECT_EQ(p2.index_map, (std::vector<Vertex>{1, 2, 4}));
  EXPECT_EQ(p2.graph.edge_count(), 3U);
  const auto p0 = prune_by_core(g, k, 0);
  EXPECT_EQ(p0.graph, g);
}

TEST(Prune, RetainsExactlyHighCoreVerticesWithInducedAdjacency) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const Graph g = random_graph(5 + rng() % 60, 0.4, rng());
    const CoreNumbers k = core_numbers(g);
    const std::size_t thr = rng() % (max_core(k) + 2);
    const auto p = prune_by_core(g, k, thr);
    std::vector<Vertex> expected;
    for (Vertex v = 0; v < g.size(); ++v)
      if (k[v] >= thr) expected.push_back(v);
    ASSERT_EQ(p.index_map, expected);
    for (Vertex i = 0; i < expected.size(); ++i)
      for (Vertex j = 0; j < expected.size(); ++j)
        EXPECT_EQ(p.graph.adjacent(i, j), g.adjacent(expected[i], expected[j]));
  }
}

TEST(ClipperPlus, FiveVertexEarlyTermination) {
  const auto r = clipper_plus(five_vertex_graph());
  EXPECT_EQ(r.clique.members, (std::vector<Vertex>{1, 2, 4}));
  EXPECT_TRUE(r.early_terminated);
  EXPECT_FALSE(r.relaxation_ran);
  EXPECT_EQ(r.pruned_n, 0U);
}

TEST(ClipperPlus, EdgelessEarlyTermination) {
  const auto r = clipper_plus(edgeless_graph(4));
  EXPECT_EQ(r.clique.size(), 1U);
  EXPECT_TRUE(r.early_terminated);
}

TEST(ClipperPlus, RejectsEmptyGraph) { EXPECT_THROW(clipper_plus(edgeless_graph(0)), InputError); }

TEST(ClipperPlus, PropertiesOn200RandomGraphs) {
  std::mt19937_64 rng(41);
  const double probs[] = {0.2, 0.5, 0.8};
  std::size_t early = 0, ran = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 25;
    const Graph g = random_graph(n, probs[t % 3], rng());
    const std::size_t omega = brute_force_omega(g);

    const auto greedy = greedy_maximal_clique(g);
    const auto pruned = prune_by_core(g, core_numbers(g), greedy.clique.size());
    const std::size_t pruned_omega = pruned.empty() ? 0 : brute_force_omega(pruned.graph);
    EXPECT_EQ(std::max(greedy.clique.size(), pruned_omega), omega) << "trial " << t;

    const auto r = clipper_plus(g);
    const auto check = validate_clique(g, r.clique);
    ASSERT_TRUE(check.is_clique) << "trial " << t;
    EXPECT_TRUE(check.is_maximal) << "trial " << t;
    EXPECT_GE(r.clique.size(), r.greedy_size);
    EXPECT_EQ(r.greedy_size, greedy.clique.size());
    EXPECT_FALSE(r.degraded);
    if (r.early_terminated) {
      ++early;
      EXPECT_FALSE(r.relaxation_ran);
      EXPECT_EQ(r.pruned_n, 0U);
      EXPECT_EQ(r.clique.size(), omega) << "trial " << t;
    } else {
      ++ran;
      EXPECT_TRUE(r.relaxation_ran);
      EXPECT_EQ(r.pruned_n, pruned.index_map.size());
    }
  }
  EXPECT_GT(early, 0U);
  EXPECT_GT(ran, 0U);
}

TEST(ClipperPlus, DegradesToGreedyOnSolverFailure) {
  // A tiny outer budget forces the relaxation to give up.
  const Graph g = random_graph(60, 0.5, 3);
  SolverParams p;
  p.max_outer_iterations = 1;
  p.max_inner_iterations = 1;
  const auto r = clipper_plus(g, p);
  ASSERT_TRUE(r.relaxation_ran);
  EXPECT_TRUE(r.degraded);
  EXPECT_FALSE(r.failure_message.empty());
  EXPECT_EQ(r.clique, greedy_maximal_clique(g).clique);
  EXPECT_TRUE(validate_clique(g, r.clique).is_maximal);
}

TEST(AccuracyRatio, Values) {
  EXPECT_DOUBLE_EQ(accuracy_ratio(34, 34), 1.0);
  EXPECT_DOUBLE_EQ(accuracy_ratio(1, 1), 1.0);
  EXPECT_NEAR(accuracy_ratio(10, 12), 0.8333333333333334, 1e-15);
  EXPECT_THROW(accuracy_ratio(3, 0), InputError);
}
