#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "clipperplus/graph.hpp"

namespace clipperplus {

/// Default node-expansion limit for max_clique_exact.
inline constexpr std::uint64_t kDefaultExactBudget = 50'000'000;

namespace detail {

/**
 * Bitset branch and bound in the MCQ/MCS family. Vertices are renumbered by
 * ascending core number (ties by ascending degree, then index) so that the
 * coloring visits high-core vertices last and expands them first.
 */
class ExactCliqueSearch {
 public:
  ExactCliqueSearch(const Graph& g, std::uint64_t budget) : budget_(budget) {
    n_ = g.size();
    words_ = bits::words_for(n_);
    const auto k = core_numbers(g);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      if (k[a] != k[b]) return k[a] < k[b];
      if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
      return a < b;
    });
    adj_.assign(n_ * words_, 0);
    std::vector<std::size_t> rank(n_);
    for (std::size_t r = 0; r < n_; ++r) rank[order_[r]] = r;
    for (std::size_t r = 0; r < n_; ++r) {
      bits::for_each(g.row(order_[r]), [&](Vertex v) { bits::set(row(r), rank[v]); });
    }
  }

  Clique run() {
    std::vector<bits::Word> p(words_, 0);
    for (std::size_t r = 0; r < n_; ++r) bits::set(p.data(), r);
    std::vector<std::size_t> current;
    expand(current, p);
    std::vector<Vertex> out;
    out.reserve(best_.size());
    for (std::size_t r : best_) out.push_back(order_[r]);
    return Clique(std::move(out));
  }

  std::uint64_t expansions() const noexcept { return expansions_; }

 private:
  bits::Word* row(std::size_t r) { return adj_.data() + r * words_; }

  // Greedy sequential coloring of P; fills (vertex, color) in non-decreasing color order.
  void color(const std::vector<bits::Word>& p, std::vector<std::size_t>& verts, std::vector<std::size_t>& colors) {
    verts.clear();
    colors.clear();
    std::vector<bits::Word> uncolored = p;
    std::vector<bits::Word> q(words_);
    std::size_t c = 0;
    while (std::any_of(uncolored.begin(), uncolored.end(), [](bits::Word w) { return w != 0; })) {
      ++c;
      q = uncolored;
      for (std::size_t w = 0; w < words_; ++w) {
        while (q[w]) {
          const std::size_t v = w * bits::kWordBits + static_cast<std::size_t>(std::countr_zero(q[w]));
          bits::reset(q.data(), v);
          bits::reset(uncolored.data(), v);
          const bits::Word* nv = row(v);
          for (std::size_t x = w; x < words_; ++x) q[x] &= ~nv[x];
          verts.push_back(v);
          colors.push_back(c);
        }
      }
    }
  }

  void expand(std::vector<std::size_t>& current, std::vector<bits::Word>& p) {
    if (++expansions_ > budget_) {
      throw ResourceError("exact clique search exceeded " + std::to_string(budget_) + " node expansions");
    }
    std::vector<std::size_t> verts;
    std::vector<std::size_t> colors;
    color(p, verts, colors);
    std::vector<bits::Word> next(words_);
    for (std::size_t idx = verts.size(); idx-- > 0;) {
      if (current.size() + colors[idx] <= best_.size()) return;
      const std::size_t v = verts[idx];
      current.push_back(v);
      const bits::Word* nv = row(v);
      bool any = false;
      for (std::size_t w = 0; w < words_; ++w) {
        next[w] = p[w] & nv[w];
        any |= next[w] != 0;
      }
      if (any) {
        expand(current, next);
      } else if (current.size() > best_.size()) {
        best_ = current;
      }
      current.pop_back();
      bits::reset(p.data(), v);
    }
  }

  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Vertex> order_;
  std::vector<bits::Word> adj_;
  std::vector<std::size_t> best_;
};

}  // namespace detail

/// Maximum clique by branch and bound with greedy-coloring bounds.
/// Throws ResourceError once `budget` search nodes have been expanded.
inline Clique max_clique_exact(const Graph& g, std::uint64_t budget = kDefaultExactBudget) {
  if (g.size() == 0) return {};
  detail::ExactCliqueSearch search(g, budget);
  return search.run();
}

}  // namespace clipperplus
