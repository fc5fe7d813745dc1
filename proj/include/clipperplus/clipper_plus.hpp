#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "clipperplus/graph.hpp"
#include "clipperplus/greedy.hpp"
#include "clipperplus/relaxation.hpp"

namespace clipperplus {

/// Induced subgraph on {v : K(v) >= threshold}; index_map[local] = original vertex.
struct PrunedGraph {
  Graph graph;
  std::vector<Vertex> index_map;

  bool empty() const noexcept { return index_map.empty(); }
};

inline PrunedGraph prune_by_core(const Graph& g, const CoreNumbers& k, std::size_t threshold) {
  if (k.size() != g.size()) throw InputError("core numbers do not match graph size");
  PrunedGraph out;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (k[v] >= threshold) out.index_map.push_back(v);
  }
  out.graph = g.induced(out.index_map);
  return out;
}

struct ClipperPlusReport {
  Clique clique;  ///< original vertex indices
  std::size_t greedy_size = 0;
  std::size_t pruned_n = 0;
  bool early_terminated = false;
  bool relaxation_ran = false;
  /// Relaxation threw SolverFailure; the greedy clique was returned instead.
  bool degraded = false;
  std::string failure_message;

  double core_ms = 0.0;
  double greedy_ms = 0.0;
  double prune_ms = 0.0;
  double relaxation_ms = 0.0;
  double total_ms() const noexcept { return core_ms + greedy_ms + prune_ms + relaxation_ms; }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/**
 * Greedy clique, then core-number pruning at the greedy size. An empty pruned
 * graph proves the greedy clique maximum. Otherwise the relaxation runs on the
 * pruned graph, started from the complement of the greedy clique, and the
 * strictly larger of the two cliques wins.
 */
inline ClipperPlusReport clipper_plus(const Graph& g, const SolverParams& params = {}) {
  if (g.size() == 0) throw InputError("CLIPPER+ on an empty graph");

  ClipperPlusReport rep;
  detail::Stopwatch sw;

  const CoreNumbers k = core_numbers(g);
  rep.core_ms = sw.lap_ms();

  const GreedyResult greedy = greedy_maximal_clique(g, k);
  rep.greedy_ms = sw.lap_ms();
  rep.clique = greedy.clique;
  rep.greedy_size = greedy.clique.size();

  const PrunedGraph pruned = prune_by_core(g, k, rep.greedy_size);
  rep.prune_ms = sw.lap_ms();
  rep.pruned_n = pruned.index_map.size();
  if (pruned.empty()) {
    rep.early_terminated = true;
    return rep;
  }

  std::vector<double> init(rep.pruned_n, 1.0);
  for (std::size_t local = 0; local < rep.pruned_n; ++local) {
    if (std::binary_search(greedy.clique.members.begin(), greedy.clique.members.end(), pruned.index_map[local])) {
      init[local] = 0.0;
    }
  }
  // All-zero complement is replaced by the uniform vector inside the solver.

  rep.relaxation_ran = true;
  try {
    const RelaxationResult relaxed = solve_relaxation(pruned.graph, init, params);
    rep.relaxation_ms = sw.lap_ms();
    if (relaxed.clique.size() > rep.greedy_size) {
      std::vector<Vertex> mapped;
      mapped.reserve(relaxed.clique.size());
      for (Vertex v : relaxed.clique.members) mapped.push_back(pruned.index_map[v]);
      rep.clique = Clique(std::move(mapped));
    }
  } catch (const SolverFailure& e) {
    rep.relaxation_ms = sw.lap_ms();
    rep.degraded = true;
    rep.failure_message = e.what();
  }
  return rep;
}

/// r = |found| / omega_gt.
inline double accuracy_ratio(std::size_t found_size, std::size_t omega_gt) {
  if (omega_gt == 0) throw InputError("ground-truth clique size must be positive");
  return static_cast<double>(found_size) / static_cast<double>(omega_gt);
}

inline double accuracy_ratio(const Clique& found, std::size_t omega_gt) {
  return accuracy_ratio(found.size(), omega_gt);
}

}  // namespace clipperplus
