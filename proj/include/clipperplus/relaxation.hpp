#pragma once

/**
 * Continuous-relaxation maximal clique solver.
 *
 * Maximizes F(u) = u' M_d u over the non-negative part of the unit sphere,
 * where M_d is A + I with every zero entry replaced by -d. Each fixed d is
 * solved by projected gradient ascent with Armijo backtracking; d is then
 * raised (homotopy) until the iterate's support is a clique with equal
 * weights, which is returned.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clipperplus/errors.hpp"
#include "clipperplus/graph.hpp"

namespace clipperplus {

/// M_d(i,j) = 1 where (A + I)(i,j) = 1, and -d elsewhere. A view over the graph.
class PenalizedMatrix {
 public:
  PenalizedMatrix(const Graph& g, double d) : g_(&g), d_(d) {
    if (!(d >= 0.0)) throw InputError("penalty d must be non-negative");
  }
  PenalizedMatrix(Graph&&, double) = delete;  // would dangle

  std::size_t size() const noexcept { return g_->size(); }
  double penalty() const noexcept { return d_; }
  const Graph& graph() const noexcept { return *g_; }

  bool base(Vertex i, Vertex j) const noexcept { return i == j || g_->adjacent(i, j); }
  double operator()(Vertex i, Vertex j) const noexcept { return base(i, j) ? 1.0 : -d_; }

  /// (A + I) u.
  void multiply_base(std::span<const double> u, std::span<double> out) const {
    const std::size_t n = size();
    for (Vertex i = 0; i < n; ++i) {
      double acc = u[i];
      bits::for_each(g_->row(i), [&](Vertex j) { acc += u[j]; });
      out[i] = acc;
    }
  }

  /// M_d u = (1 + d)(A + I)u - d (1'u) 1.
  void multiply(std::span<const double> u, std::span<double> out) const {
    multiply_base(u, out);
    const double total = std::accumulate(u.begin(), u.end(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 + d_) * out[i] - d_ * total;
  }

  std::vector<double> multiply(std::span<const double> u) const {
    std::vector<double> out(size());
    multiply(u, out);
    return out;
  }

  /// Row-major dense copy; for tests and small-graph inspection.
  std::vector<double> to_dense() const {
    const std::size_t n = size();
    std::vector<double> m(n * n);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j) m[i * n + j] = (*this)(i, j);
    return m;
  }

 private:
  const Graph* g_;
  double d_;
};

inline PenalizedMatrix penalized_matrix(const Graph& g, double d) { return PenalizedMatrix(g, d); }
PenalizedMatrix penalized_matrix(Graph&&, double) = delete;

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// g = 2 (Mu - F u), given Mu and F = u'Mu.
inline void tangent_gradient(std::span<const double> u, std::span<const double> mu, double f, std::span<double> g) {
  for (std::size_t i = 0; i < u.size(); ++i) g[i] = 2.0 * (mu[i] - f * u[i]);
}

}  // namespace detail

/// F(u) = u' M_d u.
inline double objective(std::span<const double> u, const PenalizedMatrix& m) {
  const auto mu = m.multiply(u);
  return detail::dot(u, mu);
}

/// 2 (I - u u') M_d u: the Euclidean gradient projected onto the sphere's tangent space at u.
inline std::vector<double> projected_gradient(std::span<const double> u, const PenalizedMatrix& m) {
  const auto mu = m.multiply(u);
  const double f = detail::dot(u, mu);
  std::vector<double> g(u.size());
  detail::tangent_gradient(u, mu, f, g);
  return g;
}

struct SolverParams {
  double sigma = 0.01;  ///< Armijo sufficient-increase fraction
  double beta = 0.5;    ///< backtracking factor
  double tol = 1e-8;
  double d0 = 0.0;
  /// Homotopy cap; 0 selects n + 1.
  double d_max = 0.0;
  std::size_t max_backtracks = 50;
  std::size_t max_inner_iterations = 1000;
  /// Outer (penalty increment) budget; 0 selects 10 n.
  std::size_t max_outer_iterations = 0;

  /// Throws InputError when the parameters are outside their valid ranges for an n-vertex graph.
  void validate(std::size_t n) const {
    if (!(sigma > 0.0 && sigma < 1.0)) throw InputError("sigma must lie in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("beta must lie in (0, 1)");
    if (!(tol > 0.0)) throw InputError("tol must be positive");
    if (!(d0 >= 0.0)) throw InputError("d0 must be non-negative");
    if (d_max != 0.0 && !(d_max >= static_cast<double>(n))) throw InputError("d_max must be at least n");
    if (max_backtracks == 0 || max_inner_iterations == 0) throw InputError("iteration budgets must be positive");
  }

  double effective_d_max(std::size_t n) const { return d_max != 0.0 ? d_max : static_cast<double>(n) + 1.0; }
  std::size_t effective_max_outer(std::size_t n) const {
    return max_outer_iterations != 0 ? max_outer_iterations : 10 * n;
  }
};

/// One accepted inner step, reported to an observer.
struct StepEvent {
  std::size_t outer = 0;  ///< homotopy round
  double d = 0.0;
  double f_before = 0.0;
  double f_after = 0.0;
  double alpha = 0.0;       ///< step size that was accepted
  double step_norm = 0.0;   ///< ||u+ - u||
  double unit_error = 0.0;  ///< | ||u+|| - 1 |
  double min_entry = 0.0;
};

using StepObserver = std::function<void(const StepEvent&)>;

struct RelaxationResult {
  Clique clique;
  std::vector<double> u;  ///< converged iterate
  double objective = 0.0;
  double penalty = 0.0;
  std::size_t outer_iterations = 0;
  std::size_t inner_iterations = 0;
  std::size_t escapes = 0;  ///< saddle escapes (see solve_relaxation)
  std::size_t inner_budget_hits = 0;  ///< inner solves cut off by max_inner_iterations
};

namespace detail {

/// u <- max(u, 0) / ||max(u, 0)||. Returns false when nothing positive remains.
inline bool retract(std::span<double> u) {
  double ss = 0.0;
  for (double& x : u) {
    if (!(x > 0.0)) x = 0.0;
    ss += x * x;
  }
  if (!(ss > 0.0)) return false;
  const double inv = 1.0 / std::sqrt(ss);
  for (double& x : u) x *= inv;
  return true;
}

/// Support {i : u_i > 0} is a clique and its weights agree to a relative spread of 1e-3.
inline bool is_binary_state(const Graph& g, std::span<const double> u, std::vector<Vertex>& support) {
  support.clear();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Vertex i = 0; i < u.size(); ++i) {
    if (u[i] > 0.0) {
      support.push_back(i);
      lo = std::min(lo, u[i]);
      hi = std::max(hi, u[i]);
    }
  }
  if (support.empty()) return false;
  if ((hi - lo) > 1e-3 * hi) return false;
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a + 1; b < support.size(); ++b)
      if (!g.adjacent(support[a], support[b])) return false;
  return true;
}

/// Smallest positive entry that shares a non-edge with another positive entry (ties: lowest index).
inline std::optional<Vertex> smallest_violator(const Graph& g, std::span<const double> u) {
  std::optional<Vertex> best;
  for (Vertex i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) continue;
    if (best && u[i] >= u[*best]) continue;
    for (Vertex j = 0; j < u.size(); ++j) {
      if (j != i && u[j] > 0.0 && !g.adjacent(i, j)) {
        best = i;
        break;
      }
    }
  }
  return best;
}

}  // namespace detail

/**
 * Solves the relaxation from `initial_guess` and returns the clique given by
 * the support of the converged iterate.
 *
 * Penalty schedule: after each inner solve, the smallest positive entry that
 * violates a clique constraint is located and d grows by the least amount
 * that would drive it to zero in one step at the current step size, clamped
 * to [n/100, n/4] (n/10 when no violator exists), capped at d_max.
 *
 * When the inner solve stalls at a stationary point that is not binary (e.g.
 * a symmetric saddle such as the uniform vector on an edgeless graph, where
 * the gradient vanishes for every d), that violator is set to zero directly.
 *
 * An inner solve that exhausts max_inner_iterations hands its iterate to the
 * next penalty round. Throws SolverFailure when the outer budget runs out
 * before a binary state is reached.
 */
inline RelaxationResult solve_relaxation(const Graph& g, std::span<const double> initial_guess,
                                         const SolverParams& params = {}, const StepObserver& observer = {}) {
  const std::size_t n = g.size();
  if (n == 0) throw InputError("relaxation on an empty graph");
  if (initial_guess.size() != n) throw InputError("initial guess length does not match graph size");
  params.validate(n);

  const double nd = static_cast<double>(n);
  const double d_max = params.effective_d_max(n);
  const std::size_t max_outer = params.effective_max_outer(n);

  std::vector<double> u(initial_guess.begin(), initial_guess.end());
  for (double x : u) {
    if (!std::isfinite(x)) throw InputError("initial guess contains a non-finite entry");
  }
  if (!detail::retract(u)) {
    std::fill(u.begin(), u.end(), 1.0 / std::sqrt(nd));
  }

  RelaxationResult res;
  double d = params.d0;
  double alpha = 1.0;
  std::vector<double> mu(n), g_u(n), u_next(n), mu_next(n), g_next(n), mbar_u(n);
  std::vector<Vertex> support;

  for (std::size_t outer = 0;; ++outer) {
    if (outer >= max_outer) {
      throw SolverFailure("relaxation did not reach a binary state within " + std::to_string(max_outer) +
                              " penalty increments",
                          u, d);
    }
    PenalizedMatrix md(g, d);
    alpha = 1.0;
    md.multiply(u, mu);
    double f = detail::dot(u, mu);
    detail::tangent_gradient(u, mu, f, g_u);

    // Inner solve at fixed d. Runs at least once.
    std::size_t inner = 0;
    bool moved = false;  // any step with ||du|| > 0
    double du_norm = params.tol;
    double df = params.tol;
    while (du_norm >= params.tol || std::abs(df) >= params.tol) {
      if (inner++ >= params.max_inner_iterations) {
        ++res.inner_budget_hits;
        break;
      }
      if (detail::norm(g_u) < params.tol) break;

      bool armijo = false;
      for (std::size_t b = 0; b < params.max_backtracks; ++b) {
        for (std::size_t i = 0; i < n; ++i) u_next[i] = u[i] + alpha * g_u[i];
        if (!detail::retract(u_next)) {
          alpha *= params.beta;
          continue;
        }
        md.multiply(u_next, mu_next);
        const double f_next = detail::dot(u_next, mu_next);
        double slope = 0.0;
        du_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double step = u_next[i] - u[i];
          slope += g_u[i] * step;
          du_norm += step * step;
        }
        du_norm = std::sqrt(du_norm);
        df = f_next - f;
        // The retraction is not a convex projection, so the slope term alone
        // does not rule out a decrease; require df >= 0 as well.
        armijo = df >= params.sigma * slope && df >= 0.0;
        if (!armijo) {
          alpha *= params.beta;
          continue;
        }
        alpha /= std::sqrt(params.beta);
        if (observer) {
          observer(StepEvent{outer, d, f, f_next, alpha * std::sqrt(params.beta), du_norm,
                             std::abs(detail::norm(u_next) - 1.0),
                             *std::min_element(u_next.begin(), u_next.end())});
        }
        f = f_next;
        break;
      }
      if (!armijo) break;  // stationary up to rounding
      std::swap(u, u_next);
      std::swap(mu, mu_next);
      detail::tangent_gradient(u, mu, f, g_u);
      moved |= du_norm > 0.0;
    }
    res.inner_iterations += inner;

    if (detail::is_binary_state(g, u, support)) {
      res.clique = Clique(support);
      res.objective = f;
      res.penalty = d;
      res.outer_iterations = outer;
      res.u = std::move(u);
      return res;
    }

    // Homotopy step on d.
    const auto violator = detail::smallest_violator(g, u);
    double delta = nd / 10.0;
    if (violator) {
      const Vertex i = *violator;
      // M-bar u = (1'u) 1 - (A + I) u
      md.multiply_base(u, mbar_u);
      const double total = std::accumulate(u.begin(), u.end(), 0.0);
      for (double& x : mbar_u) x = total - x;
      const double q = detail::dot(u, mbar_u);
      const double a = mu[i] - f * u[i] + u[i] / (2.0 * alpha);
      const double b = mbar_u[i] - q * u[i];
      if (b > 0.0 && std::isfinite(a / b)) delta = a / b;
      delta = std::clamp(delta, nd / 100.0, nd / 4.0);

      if (d >= d_max || (!moved && detail::norm(g_u) < params.tol)) {
        u[i] = 0.0;
        if (!detail::retract(u)) std::fill(u.begin(), u.end(), 1.0 / std::sqrt(nd));
        ++res.escapes;
      }
    }
    d = std::min(d + delta, d_max);
  }
}

/// Uniform start, 1/sqrt(n) in every entry.
inline RelaxationResult solve_relaxation(const Graph& g, const SolverParams& params = {},
                                         const StepObserver& observer = {}) {
  std::vector<double> init(g.size(), 1.0);
  return solve_relaxation(g, init, params, observer);
}

}  // namespace clipperplus
