#pragma once

/**
 * Undirected, unweighted graph stored as a dense bit-packed adjacency matrix,
 * plus the vertex-level kernels every solver builds on: core numbers,
 * sparsity, and clique validation.
 *
 * Vertices are 0-based. Constructors that take 1-based edge lists convert at
 * the boundary.
 */

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clipperplus/errors.hpp"

namespace clipperplus {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

namespace bits {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

inline bool test(const Word* w, std::size_t i) { return (w[i / kWordBits] >> (i % kWordBits)) & 1U; }
inline void set(Word* w, std::size_t i) { w[i / kWordBits] |= Word{1} << (i % kWordBits); }
inline void reset(Word* w, std::size_t i) { w[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

inline std::size_t popcount(std::span<const Word> w) {
  std::size_t c = 0;
  for (Word x : w) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

/// Calls f(index) for every set bit, in ascending order.
template <typename F>
void for_each(std::span<const Word> w, F&& f) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    Word x = w[k];
    while (x) {
      const auto b = static_cast<std::size_t>(std::countr_zero(x));
      f(k * kWordBits + b);
      x &= x - 1;
    }
  }
}

}  // namespace bits

class GraphBuilder;

/// Immutable undirected graph. Safe to share across concurrent readers.
class Graph {
 public:
  Graph() = default;

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool adjacent(Vertex i, Vertex j) const noexcept { return bits::test(row_ptr(i), j); }

  std::span<const bits::Word> row(Vertex i) const noexcept { return {row_ptr(i), words_}; }

  std::size_t degree(Vertex i) const noexcept { return degree_[i]; }

  std::size_t max_degree() const noexcept {
    return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
  }

  std::vector<Vertex> neighbors(Vertex i) const {
    std::vector<Vertex> out;
    out.reserve(degree_[i]);
    bits::for_each(row(i), [&](std::size_t j) { out.push_back(j); });
    return out;
  }

  /// Subgraph induced by `vertices` (in the given order); local index k maps to vertices[k].
  Graph induced(std::span<const Vertex> vertices) const;

  /// Builds from 1-based edges, as written in DIMACS files and the worked examples.
  static Graph from_edge_list(std::size_t n, std::span<const Edge> one_based_edges);

  /// Builds from 0-based edges.
  static Graph from_zero_based_edges(std::size_t n, std::span<const Edge> edges);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.adj_ == b.adj_;
  }

 private:
  friend class GraphBuilder;

  const bits::Word* row_ptr(Vertex i) const noexcept { return adj_.data() + i * words_; }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t m_ = 0;
  std::vector<bits::Word> adj_;
  std::vector<std::size_t> degree_;
};

/// Mutable staging area for a Graph. Duplicate edges collapse.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : n_(n), words_(bits::words_for(n)), adj_(n * words_, 0) {}

  std::size_t size() const noexcept { return n_; }

  void add_edge(Vertex i, Vertex j) {
    if (i >= n_ || j >= n_) {
      throw InputError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") has an endpoint outside [0, " + std::to_string(n_) + ")");
    }
    if (i == j) throw InputError("self-loop on vertex " + std::to_string(i));
    bits::set(adj_.data() + i * words_, j);
    bits::set(adj_.data() + j * words_, i);
  }

  bool adjacent(Vertex i, Vertex j) const noexcept { return bits::test(adj_.data() + i * words_, j); }

  Graph build() && {
    Graph g;
    g.n_ = n_;
    g.words_ = words_;
    g.degree_.resize(n_);
    std::size_t twice_m = 0;
    for (Vertex i = 0; i < n_; ++i) {
      g.degree_[i] = bits::popcount({adj_.data() + i * words_, words_});
      twice_m += g.degree_[i];
    }
    g.m_ = twice_m / 2;
    g.adj_ = std::move(adj_);
    return g;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<bits::Word> adj_;
};

inline Graph Graph::from_zero_based_edges(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (const auto& [i, j] : edges) b.add_edge(i, j);
  return std::move(b).build();
}

inline Graph Graph::from_edge_list(std::size_t n, std::span<const Edge> one_based_edges) {
  GraphBuilder b(n);
  for (const auto& [i, j] : one_based_edges) {
    if (i < 1 || j < 1 || i > n || j > n) {
      throw InputError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") has an endpoint outside [1, " + std::to_string(n) + "]");
    }
    b.add_edge(i - 1, j - 1);
  }
  return std::move(b).build();
}

inline Graph Graph::induced(std::span<const Vertex> vertices) const {
  GraphBuilder b(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t c = a + 1; c < vertices.size(); ++c) {
      if (adjacent(vertices[a], vertices[c])) b.add_edge(a, c);
    }
  }
  return std::move(b).build();
}

/// Per-vertex degeneracy K(v).
using CoreNumbers = std::vector<std::size_t>;

/**
 * Core numbers by the Batagelj-Zaversnik bucket algorithm: vertices are kept
 * sorted by current degree in a bin array and peeled in non-decreasing order.
 * O(n + |E|) after the O(n^2 / 64) scan of the bit rows.
 */
inline CoreNumbers core_numbers(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return {};

  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }

  // bin[d] = start of the block of vertices with degree d inside `vert`
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (Vertex v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (std::size_t d = 0; d <= max_deg; ++d) {
    const std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }

  std::vector<Vertex> vert(n);
  std::vector<std::size_t> pos(n);
  for (Vertex v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = vert[i];
    bits::for_each(g.row(v), [&](Vertex u) {
      if (deg[u] > deg[v]) {
        const std::size_t du = deg[u];
        const std::size_t pu = pos[u];
        const std::size_t pw = bin[du];
        const Vertex w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    });
  }
  return deg;
}

inline std::size_t max_core(const CoreNumbers& k) {
  return k.empty() ? 0 : *std::max_element(k.begin(), k.end());
}

/// s = 1 - |E| / (n(n-1)/2).
inline double sparsity(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 2) throw InputError("sparsity needs at least 2 vertices, got " + std::to_string(n));
  const double max_edges = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return 1.0 - static_cast<double>(g.edge_count()) / max_edges;
}

/// Vertex set with sorted, unique members (0-based).
struct Clique {
  std::vector<Vertex> members;

  Clique() = default;
  explicit Clique(std::vector<Vertex> m) : members(std::move(m)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }

  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }

  friend bool operator==(const Clique&, const Clique&) = default;
};

struct CliqueCheck {
  bool is_clique = false;
  bool is_maximal = false;
};

/// is_maximal additionally requires that no outside vertex is adjacent to every member.
inline CliqueCheck validate_clique(const Graph& g, std::span<const Vertex> members) {
  CliqueCheck out;
  for (std::size_t a = 0; a < members.size(); ++a) {
    if (members[a] >= g.size()) return out;
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (members[a] == members[b] || !g.adjacent(members[a], members[b])) return out;
    }
  }
  out.is_clique = true;

  // common neighbourhood of all members; empty set is extendable by any vertex
  std::vector<bits::Word> common(g.words_per_row(), ~bits::Word{0});
  if (g.size() % bits::kWordBits != 0 && !common.empty()) {
    common.back() = (bits::Word{1} << (g.size() % bits::kWordBits)) - 1;
  }
  for (Vertex v : members) {
    auto r = g.row(v);
    for (std::size_t k = 0; k < common.size(); ++k) common[k] &= r[k];
  }
  out.is_maximal = bits::popcount(common) == 0;
  return out;
}

inline CliqueCheck validate_clique(const Graph& g, const Clique& c) { return validate_clique(g, c.members); }

}  // namespace clipperplus
