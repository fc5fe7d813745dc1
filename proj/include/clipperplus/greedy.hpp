#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "clipperplus/graph.hpp"

namespace clipperplus {

struct GreedyResult {
  Clique clique;
  /// c_max after each examined (non-skipped) seed vertex.
  std::vector<std::size_t> best_size_trace;
};

namespace detail {

/// Descending core number, ties by ascending vertex index.
inline void sort_by_core_desc(std::vector<Vertex>& v, const CoreNumbers& k) {
  std::sort(v.begin(), v.end(), [&](Vertex a, Vertex b) { return k[a] != k[b] ? k[a] > k[b] : a < b; });
}

}  // namespace detail

/**
 * Degeneracy-ordered greedy maximal clique.
 *
 * Seeds are visited in descending core-number order and skipped once their
 * core number falls below the best size found so far. Each seed grows a clique
 * from its neighbours with core number >= c_max, again in descending core
 * order. The seed itself is the first member of the clique it grows.
 */
inline GreedyResult greedy_maximal_clique(const Graph& g, const CoreNumbers& k) {
  const std::size_t n = g.size();
  if (n == 0) throw InputError("greedy clique search on an empty graph");
  if (k.size() != n) throw InputError("core numbers do not match graph size");

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  detail::sort_by_core_desc(order, k);

  GreedyResult out;
  std::vector<Vertex> best;
  std::size_t c_max = 0;
  std::vector<Vertex> candidates;
  std::vector<Vertex> current;

  for (Vertex v : order) {
    if (k[v] < c_max) continue;

    candidates.clear();
    bits::for_each(g.row(v), [&](Vertex u) {
      if (k[u] >= c_max) candidates.push_back(u);
    });
    detail::sort_by_core_desc(candidates, k);

    current.assign(1, v);
    if (current.size() > c_max) {
      best = current;
      c_max = current.size();
    }
    for (Vertex s : candidates) {
      const bool extends = std::all_of(current.begin(), current.end(), [&](Vertex c) { return g.adjacent(c, s); });
      if (extends) current.push_back(s);
      if (current.size() > c_max) {
        best = current;
        c_max = current.size();
      }
    }
    out.best_size_trace.push_back(c_max);
  }

  out.clique = Clique(std::move(best));
  return out;
}

inline GreedyResult greedy_maximal_clique(const Graph& g) { return greedy_maximal_clique(g, core_numbers(g)); }

}  // namespace clipperplus
