#pragma once

/**
 * Benchmark harness: algorithm dispatch with solve-only timing, DIMACS suite
 * runs against known clique numbers, and Monte-Carlo registration sweeps.
 * Results are emitted as CSV with a fixed header.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "clipperplus/clipper_plus.hpp"
#include "clipperplus/dimacs.hpp"
#include "clipperplus/exact.hpp"
#include "clipperplus/greedy.hpp"
#include "clipperplus/random.hpp"
#include "clipperplus/registration.hpp"
#include "clipperplus/relaxation.hpp"

namespace clipperplus {

enum class Algorithm { kGreedy, kRelax, kClipperPlus, kExact };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kRelax: return "relax";
    case Algorithm::kClipperPlus: return "clipper+";
    case Algorithm::kExact: return "exact";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "greedy") return Algorithm::kGreedy;
  if (s == "relax") return Algorithm::kRelax;
  if (s == "clipper+" || s == "clipperplus") return Algorithm::kClipperPlus;
  if (s == "exact") return Algorithm::kExact;
  throw InputError("unknown algorithm '" + s + "' (expected greedy, relax, clipper+ or exact)");
}

struct SolveOutcome {
  Clique clique;
  double runtime_ms = 0.0;
  bool early_terminated = false;
  bool degraded = false;  ///< CLIPPER+ fell back to its greedy clique
};

/// Runs one algorithm and validates its clique. Only the solve call is timed.
/// Relax starts from the uniform vector. Throws std::logic_error if a solver
/// returns a set that is not a clique.
inline SolveOutcome run_algorithm(const Graph& g, Algorithm algo, const SolverParams& params = {},
                                  std::uint64_t exact_budget = kDefaultExactBudget) {
  SolveOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  switch (algo) {
    case Algorithm::kGreedy:
      out.clique = greedy_maximal_clique(g).clique;
      break;
    case Algorithm::kRelax:
      out.clique = solve_relaxation(g, params).clique;
      break;
    case Algorithm::kClipperPlus: {
      auto rep = clipper_plus(g, params);
      out.clique = std::move(rep.clique);
      out.early_terminated = rep.early_terminated;
      out.degraded = rep.degraded;
      break;
    }
    case Algorithm::kExact:
      out.clique = max_clique_exact(g, exact_budget);
      break;
  }
  out.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!validate_clique(g, out.clique).is_clique) {
    throw std::logic_error(to_string(algo) + " returned a vertex set that is not a clique");
  }
  return out;
}

struct BenchRecord {
  std::string graph_id;
  std::size_t n = 0;
  double sparsity = 0.0;
  std::string algo;
  std::size_t clique_size = 0;
  std::optional<std::size_t> omega_gt;
  std::optional<double> r;
  double runtime_ms = 0.0;
  std::optional<std::uint64_t> seed;
  bool early_terminated = false;

  // Not part of the CSV schema.
  std::optional<double> outlier_pct;
  bool degraded = false;
  bool oracle_exhausted = false;
};

inline constexpr const char* kCsvHeader = "graph_id,n,sparsity,algo,clique_size,omega_gt,r,runtime_ms,seed,early_terminated";

namespace detail {

inline std::string fmt_double(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

}  // namespace detail

inline std::string to_csv_row(const BenchRecord& r) {
  std::ostringstream s;
  s << r.graph_id << ',' << r.n << ',' << detail::fmt_double(r.sparsity, 6) << ',' << r.algo << ',' << r.clique_size
    << ',' << (r.omega_gt ? std::to_string(*r.omega_gt) : "") << ',' << (r.r ? detail::fmt_double(*r.r, 6) : "")
    << ',' << detail::fmt_double(r.runtime_ms, 3) << ',' << (r.seed ? std::to_string(*r.seed) : "") << ','
    << (r.early_terminated ? 1 : 0);
  return s.str();
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << to_csv_row(r) << '\n';
}

/// Deterministic emission order: (graph_id, algo, seed).
inline void sort_records(std::vector<BenchRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    if (a.graph_id != b.graph_id) return a.graph_id < b.graph_id;
    if (a.algo != b.algo) return a.algo < b.algo;
    return a.seed.value_or(0) < b.seed.value_or(0);
  });
}

/// Known maximum clique sizes of DIMACS graphs used in the accuracy table.
inline std::map<std::string, std::size_t> default_dimacs_omega() {
  return {
      {"C125.9", 34},         {"C250.9", 44},  {"brock200_2", 12}, {"brock200_4", 17},     {"gen200_p0.9_44", 44},
      {"gen200_p0.9_55", 55}, {"keller4", 11}, {"p_hat300-1", 8},  {"p_hat300-2", 25},
  };
}

/// graph_id for a DIMACS path: file name without ".clq" / ".txt" / ".dimacs".
inline std::string dimacs_graph_id(const std::string& path) {
  std::filesystem::path p(path);
  std::string name = p.filename().string();
  for (const char* ext : {".clq", ".txt", ".dimacs", ".col"}) {
    const std::string e(ext);
    if (name.size() > e.size() && name.compare(name.size() - e.size(), e.size(), e) == 0) {
      name.resize(name.size() - e.size());
      break;
    }
  }
  return name;
}

inline BenchRecord make_record(const std::string& id, const Graph& g, double s, Algorithm algo,
                               const SolveOutcome& o, std::optional<std::size_t> omega_gt) {
  BenchRecord rec;
  rec.graph_id = id;
  rec.n = g.size();
  rec.sparsity = s;
  rec.algo = to_string(algo);
  rec.clique_size = o.clique.size();
  rec.runtime_ms = o.runtime_ms;
  rec.early_terminated = o.early_terminated;
  rec.degraded = o.degraded;
  if (omega_gt && *omega_gt > 0) {
    rec.omega_gt = omega_gt;
    rec.r = accuracy_ratio(o.clique, *omega_gt);
  }
  return rec;
}

/// One record per (graph, algorithm). Graphs absent from `omega_table` get no omega_gt or r.
inline std::vector<BenchRecord> bench_dimacs(const std::vector<std::string>& files,
                                             const std::vector<Algorithm>& algorithms,
                                             const std::map<std::string, std::size_t>& omega_table,
                                             const SolverParams& params = {},
                                             std::uint64_t exact_budget = kDefaultExactBudget) {
  std::vector<BenchRecord> out;
  if (algorithms.empty()) return out;
  for (const auto& path : files) {
    const DimacsGraph dg = read_dimacs(path);
    const std::string id = dimacs_graph_id(path);
    const double s = dg.graph.size() >= 2 ? sparsity(dg.graph) : 1.0;
    std::optional<std::size_t> omega;
    if (auto it = omega_table.find(id); it != omega_table.end()) omega = it->second;
    for (Algorithm a : algorithms) {
      out.push_back(make_record(id, dg.graph, s, a, run_algorithm(dg.graph, a, params, exact_budget), omega));
    }
  }
  sort_records(out);
  return out;
}

// Monte-Carlo registration sweep -------------------------------------------

struct SweepConfig {
  double start_pct = 0.0;
  double stop_pct = 90.0;
  double step_pct = 10.0;
  std::size_t trials = 20;
  SceneParams scene{200, 0.2, 200, 1.0, 100, 0.0, 0};
  std::vector<Algorithm> algorithms{Algorithm::kGreedy, Algorithm::kRelax, Algorithm::kClipperPlus};
  std::uint64_t seed = 1;
  std::uint64_t exact_budget = kDefaultExactBudget;
  unsigned threads = 1;
  SolverParams params;

  void validate() const {
    if (!(step_pct > 0.0)) throw InputError("sweep step must be positive");
    if (trials < 1) throw InputError("sweep needs at least one trial");
    if (!(start_pct >= 0.0 && stop_pct <= 100.0 && start_pct <= stop_pct)) {
      throw InputError("outlier percentages must satisfy 0 <= start <= stop <= 100");
    }
  }

  std::vector<double> increments() const {
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
      const double pct = start_pct + static_cast<double>(k) * step_pct;
      if (pct > stop_pct + 1e-9) break;
      out.push_back(pct);
    }
    return out;
  }
};

/// Per-trial scenario seed.
inline std::uint64_t trial_seed(std::uint64_t base, std::size_t increment, std::size_t trial) {
  return splitmix64(base ^ splitmix64((static_cast<std::uint64_t>(increment) << 32) | trial));
}

struct SweepSummary {
  double outlier_pct = 0.0;
  std::string algo;
  double mean_r = 0.0;
  double mean_sparsity = 0.0;
  double mean_runtime_ms = 0.0;
  std::size_t trials = 0;    ///< records contributing to mean_r
  std::size_t excluded = 0;  ///< records without ground truth
};

struct SweepResult {
  std::vector<BenchRecord> records;
  std::vector<SweepSummary> summaries;
};

inline constexpr const char* kSummaryCsvHeader = "outlier_pct,algo,mean_r,mean_sparsity,mean_runtime_ms,trials,excluded";

inline void write_summary_csv(std::ostream& out, const std::vector<SweepSummary>& rows) {
  out << kSummaryCsvHeader << '\n';
  for (const auto& s : rows) {
    out << detail::fmt_double(s.outlier_pct, 2) << ',' << s.algo << ',' << detail::fmt_double(s.mean_r, 6) << ','
        << detail::fmt_double(s.mean_sparsity, 6) << ',' << detail::fmt_double(s.mean_runtime_ms, 3) << ','
        << s.trials << ',' << s.excluded << '\n';
  }
}

/// Mean r, sparsity and runtime per (outlier increment, algorithm); records
/// without ground truth are excluded from mean_r.
inline std::vector<SweepSummary> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::pair<double, std::string>, SweepSummary> acc;
  std::map<std::pair<double, std::string>, std::size_t> counts;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.outlier_pct.value_or(0.0), r.algo);
    auto& s = acc[key];
    s.outlier_pct = key.first;
    s.algo = key.second;
    s.mean_sparsity += r.sparsity;
    s.mean_runtime_ms += r.runtime_ms;
    ++counts[key];
    if (r.r) {
      s.mean_r += *r.r;
      ++s.trials;
    } else {
      ++s.excluded;
    }
  }
  std::vector<SweepSummary> out;
  for (auto& [key, s] : acc) {
    const auto c = static_cast<double>(counts[key]);
    s.mean_sparsity /= c;
    s.mean_runtime_ms /= c;
    if (s.trials > 0) s.mean_r /= static_cast<double>(s.trials);
    out.push_back(s);
  }
  return out;
}

namespace detail {

inline std::vector<BenchRecord> run_sweep_trial(const SweepConfig& cfg, std::size_t inc_index, double pct,
                                                std::size_t trial) {
  SceneParams sp = cfg.scene;
  sp.outlier_ratio = pct / 100.0;
  sp.seed = trial_seed(cfg.seed, inc_index, trial);
  const Scenario scene = synthetic_scene(sp);
  const Graph g = build_consistency_graph(scene.cloud_a, scene.cloud_b, scene.associations, scene.epsilon);
  const double s = g.size() >= 2 ? sparsity(g) : 1.0;

  std::ostringstream id;
  id << "synthetic_o" << std::setw(3) << std::setfill('0') << std::llround(pct * 100.0) / 100 << "_t"
     << std::setw(3) << std::setfill('0') << trial;

  std::optional<std::size_t> omega;
  bool exhausted = false;
  try {
    omega = max_clique_exact(g, cfg.exact_budget).size();
  } catch (const ResourceError&) {
    exhausted = true;
  }

  std::vector<BenchRecord> out;
  for (Algorithm a : cfg.algorithms) {
    SolveOutcome o;
    if (a == Algorithm::kExact && exhausted) continue;
    o = run_algorithm(g, a, cfg.params, cfg.exact_budget);
    BenchRecord rec = make_record(id.str(), g, s, a, o, omega);
    rec.seed = sp.seed;
    rec.outlier_pct = pct;
    rec.oracle_exhausted = exhausted;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace detail

/**
 * For each outlier increment and trial: generate a scene, build its
 * consistency graph, take omega_gt from the exact solver, and run each
 * algorithm. Trials run on `threads` workers; output order is deterministic.
 */
inline SweepResult bench_synthetic(const SweepConfig& cfg) {
  cfg.validate();
  const auto incs = cfg.increments();
  const std::size_t tasks = incs.size() * cfg.trials;

  std::vector<std::vector<BenchRecord>> per_task(tasks);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        per_task[t] = detail::run_sweep_trial(cfg, t / cfg.trials, incs[t / cfg.trials], t % cfg.trials);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  const unsigned nthreads = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(tasks)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  SweepResult res;
  for (auto& v : per_task) {
    for (auto& r : v) res.records.push_back(std::move(r));
  }
  sort_records(res.records);
  res.summaries = summarize(res.records);
  return res;
}

}  // namespace clipperplus
