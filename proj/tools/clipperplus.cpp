// clipperplus command-line tool.
//
//   clipperplus solve GRAPH.clq [--algo A] [--seed S] [--params P.json] [--out F]
//   clipperplus bench-dimacs FILE... [--algo A]... [--out F]
//   clipperplus bench-synthetic [--start --stop --step --trials ...] [--out F] [--summary F]
//   clipperplus register (--scenario S.json | --cloud-a A --cloud-b B --associations M --epsilon E) [--out F]
//   clipperplus gen-scene --out S.json [--seed S] [--outlier-ratio R] ...
//
// Exit codes: 0 success, 1 input error, 2 solver failure, 3 registration failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "clipperplus/bench.hpp"
#include "clipperplus/scenario_io.hpp"

namespace cp = clipperplus;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitRegistration = 3;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json record_to_json(const cp::BenchRecord& r) {
  json j{{"graph_id", r.graph_id},
         {"n", r.n},
         {"sparsity", r.sparsity},
         {"algo", r.algo},
         {"clique_size", r.clique_size},
         {"omega_gt", nullptr},
         {"r", nullptr},
         {"runtime_ms", r.runtime_ms},
         {"seed", nullptr},
         {"early_terminated", r.early_terminated}};
  if (r.omega_gt) j["omega_gt"] = *r.omega_gt;
  if (r.r) j["r"] = *r.r;
  if (r.seed) j["seed"] = *r.seed;
  if (r.outlier_pct) j["outlier_pct"] = *r.outlier_pct;
  if (r.oracle_exhausted) j["oracle_exhausted"] = true;
  return j;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw cp::InputError("cannot open " + path + " for writing");
  return out;
}

// CSV by default; a ".json" suffix selects a JSON array.
void emit_records(const std::vector<cp::BenchRecord>& records, const std::string& path) {
  if (path.empty() || path == "-") {
    cp::write_csv(std::cout, records);
    return;
  }
  auto out = open_out(path);
  if (ends_with(path, ".json")) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(record_to_json(r));
    out << arr.dump(1) << '\n';
  } else {
    cp::write_csv(out, records);
  }
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(1) << '\n';
  } else {
    open_out(path) << j.dump(1) << '\n';
  }
}

json transform_to_json(const cp::RigidTransform& t) {
  json rot = json::array();
  for (int r = 0; r < 3; ++r) rot.push_back({t.rotation(r, 0), t.rotation(r, 1), t.rotation(r, 2)});
  return {{"rotation", rot}, {"translation", {t.translation.x(), t.translation.y(), t.translation.z()}}};
}

std::vector<double> random_initial_guess(std::size_t n, std::uint64_t seed) {
  cp::Rng rng(seed, cp::Stream::kInitialGuess);
  std::vector<double> u(n);
  for (auto& x : u) x = rng.uniform();
  return u;
}

struct Options {
  std::string graph_path;
  std::vector<std::string> files;
  std::vector<std::string> algos;
  std::string out;
  std::string summary;
  std::string params_path;
  std::optional<std::uint64_t> seed;
  std::uint64_t exact_budget = cp::kDefaultExactBudget;

  cp::SweepConfig sweep;
  cp::SceneParams scene;

  std::string scenario;
  std::string cloud_a;
  std::string cloud_b;
  std::string associations;
  std::optional<double> epsilon;
};

cp::SolverParams load_params(const Options& o) {
  return o.params_path.empty() ? cp::SolverParams{} : cp::read_solver_params(o.params_path);
}

std::vector<cp::Algorithm> parse_algos(const std::vector<std::string>& names, std::vector<cp::Algorithm> fallback) {
  if (names.empty()) return fallback;
  std::vector<cp::Algorithm> out;
  for (const auto& n : names) out.push_back(cp::parse_algorithm(n));
  return out;
}

int run_solve(const Options& o) {
  const cp::DimacsGraph dg = cp::read_dimacs(o.graph_path);
  for (const auto& w : dg.warnings) std::cerr << "warning: " << o.graph_path << ": " << w << '\n';
  const auto params = load_params(o);
  const cp::Algorithm algo = parse_algos(o.algos, {cp::Algorithm::kClipperPlus}).front();

  cp::SolveOutcome res;
  if (algo == cp::Algorithm::kRelax && o.seed) {
    const auto t0 = std::chrono::steady_clock::now();
    res.clique = cp::solve_relaxation(dg.graph, random_initial_guess(dg.graph.size(), *o.seed), params).clique;
    res.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  } else {
    res = cp::run_algorithm(dg.graph, algo, params, o.exact_budget);
  }
  const auto check = cp::validate_clique(dg.graph, res.clique);

  std::vector<std::size_t> one_based;
  for (auto v : res.clique.members) one_based.push_back(v + 1);
  json j{{"graph", o.graph_path},
         {"n", dg.graph.size()},
         {"edges", dg.graph.edge_count()},
         {"algo", cp::to_string(algo)},
         {"clique_size", res.clique.size()},
         {"clique", one_based},
         {"maximal", check.is_maximal},
         {"runtime_ms", res.runtime_ms},
         {"early_terminated", res.early_terminated}};
  if (!o.out.empty()) emit_json(j, o.out);

  std::cout << "clique size " << res.clique.size() << ":";
  for (auto v : one_based) std::cout << ' ' << v;
  std::cout << '\n';
  return kExitOk;
}

int run_bench_dimacs(const Options& o) {
  const auto algos =
      parse_algos(o.algos, {cp::Algorithm::kGreedy, cp::Algorithm::kRelax, cp::Algorithm::kClipperPlus});
  const auto records = cp::bench_dimacs(o.files, algos, cp::default_dimacs_omega(), load_params(o), o.exact_budget);
  emit_records(records, o.out);
  return kExitOk;
}

int run_bench_synthetic(Options o) {
  o.sweep.algorithms = parse_algos(o.algos, o.sweep.algorithms);
  o.sweep.params = load_params(o);
  o.sweep.exact_budget = o.exact_budget;
  if (o.seed) o.sweep.seed = *o.seed;
  const auto result = cp::bench_synthetic(o.sweep);
  emit_records(result.records, o.out);
  if (!o.summary.empty()) {
    auto out = open_out(o.summary);
    cp::write_summary_csv(out, result.summaries);
  } else if (!o.out.empty() && o.out != "-") {
    cp::write_summary_csv(std::cout, result.summaries);
  }
  return kExitOk;
}

int run_register(const Options& o) {
  const auto params = load_params(o);
  cp::PointCloud a, b;
  std::vector<cp::Association> assoc;
  double eps = 0.0;
  std::optional<cp::RigidTransform> gt;

  if (!o.scenario.empty()) {
    cp::Scenario s = cp::read_scenario(o.scenario);
    a = std::move(s.cloud_a);
    b = std::move(s.cloud_b);
    assoc = std::move(s.associations);
    eps = o.epsilon.value_or(s.epsilon);
    gt = s.gt_transform;
  } else {
    if (o.cloud_a.empty() || o.cloud_b.empty() || o.associations.empty() || !o.epsilon) {
      throw cp::InputError("register needs --scenario, or --cloud-a, --cloud-b, --associations and --epsilon");
    }
    a = cp::read_file(o.cloud_a, [](std::istream& in) { return cp::read_point_cloud(in); });
    b = cp::read_file(o.cloud_b, [](std::istream& in) { return cp::read_point_cloud(in); });
    assoc = cp::read_file(o.associations, [](std::istream& in) { return cp::read_associations(in); });
    eps = *o.epsilon;
  }

  const auto rep = cp::register_clouds(a, b, assoc, eps, gt, params);
  json j{{"transform", transform_to_json(rep.transform)},
         {"inliers", rep.inliers},
         {"graph_size", rep.graph_size},
         {"graph_sparsity", rep.graph_sparsity},
         {"greedy_size", rep.clique_report.greedy_size},
         {"early_terminated", rep.clique_report.early_terminated}};
  if (rep.errors) {
    j["errors"] = {{"rotation_deg", rep.errors->rotation_error_deg},
                   {"translation_m", rep.errors->translation_error_m}};
  }
  emit_json(j, o.out);
  return kExitOk;
}

int run_gen_scene(const Options& o) {
  cp::SceneParams p = o.scene;
  p.seed = o.seed.value_or(0);
  const cp::Scenario s = cp::synthetic_scene(p);
  if (o.out.empty() || o.out == "-") {
    std::cout << cp::to_json(s).dump(1) << '\n';
  } else {
    cp::write_scenario(s, o.out);
  }
  std::cerr << "scene: " << s.associations.size() << " associations, " << s.inlier_count()
            << " inliers, epsilon " << s.epsilon << '\n';
  return kExitOk;
}

void add_scene_options(CLI::App* cmd, cp::SceneParams& scene) {
  cmd->add_option("--points", scene.n_points, "Points in the source cloud")->capture_default_str();
  cmd->add_option("--cube-size", scene.cube_size, "Edge length of the sampling cube (m)")->capture_default_str();
  cmd->add_option("--clutter", scene.n_outlier_points, "Clutter points added to the target cloud")
      ->capture_default_str();
  cmd->add_option("--clutter-radius", scene.outlier_sphere_radius, "Radius of the clutter ball (m)")
      ->capture_default_str();
  cmd->add_option("--associations", scene.n_associations, "Putative associations per scene")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum clique estimation and outlier-robust point-cloud registration"};
  app.require_subcommand(1);
  Options o;

  const std::string algo_help = "Algorithm: greedy, relax, clipper+ or exact";
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--params", o.params_path, "JSON file with solver parameter overrides");
    cmd->add_option("--exact-budget", o.exact_budget, "Node budget for the exact solver")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Estimate a maximum clique of one DIMACS graph");
  solve->add_option("graph", o.graph_path, "DIMACS graph file")->required();
  solve->add_option("--algo", o.algos, algo_help)->expected(1);
  solve->add_option("--seed", o.seed, "Random initial guess for relax (uniform when omitted)");
  solve->add_option("--out", o.out, "Write a JSON report to this path");
  add_common(solve);

  auto* bdimacs = app.add_subcommand("bench-dimacs", "Benchmark algorithms on DIMACS graphs");
  bdimacs->add_option("files", o.files, "DIMACS graph files")->required();
  bdimacs->add_option("--algo", o.algos, algo_help + " (repeatable)");
  bdimacs->add_option("--out", o.out, "CSV path, or .json for a JSON array (default stdout)");
  add_common(bdimacs);

  auto* bsynth = app.add_subcommand("bench-synthetic", "Monte-Carlo registration sweep over outlier ratios");
  bsynth->add_option("--start", o.sweep.start_pct, "First outlier percentage")->capture_default_str();
  bsynth->add_option("--stop", o.sweep.stop_pct, "Last outlier percentage")->capture_default_str();
  bsynth->add_option("--step", o.sweep.step_pct, "Outlier percentage increment")->capture_default_str();
  bsynth->add_option("--trials", o.sweep.trials, "Trials per increment")->capture_default_str();
  bsynth->add_option("--threads", o.sweep.threads, "Worker threads")->capture_default_str();
  bsynth->add_option("--algo", o.algos, algo_help + " (repeatable)");
  bsynth->add_option("--seed", o.seed, "Base seed");
  bsynth->add_option("--out", o.out, "CSV path, or .json for a JSON array (default stdout)");
  bsynth->add_option("--summary", o.summary, "Per-increment summary CSV path");
  add_scene_options(bsynth, o.sweep.scene);
  add_common(bsynth);

  auto* reg = app.add_subcommand("register", "Register two point clouds from putative associations");
  reg->add_option("--scenario", o.scenario, "Scenario JSON file");
  reg->add_option("--cloud-a", o.cloud_a, "Source cloud text file (x y z per line)");
  reg->add_option("--cloud-b", o.cloud_b, "Target cloud text file (x y z per line)");
  reg->add_option("--associations", o.associations, "Association text file (0-based 'a b' per line)");
  reg->add_option("--epsilon", o.epsilon, "Consistency threshold (m)");
  reg->add_option("--out", o.out, "Write the JSON report here (default stdout)");
  add_common(reg);

  auto* gen = app.add_subcommand("gen-scene", "Generate a synthetic registration scenario");
  gen->add_option("--out", o.out, "Scenario JSON path (default stdout)");
  gen->add_option("--seed", o.seed, "Scene seed");
  gen->add_option("--outlier-ratio", o.scene.outlier_ratio, "Fraction of outlier associations")->capture_default_str();
  add_scene_options(gen, o.scene);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) return run_solve(o);
    if (*bdimacs) return run_bench_dimacs(o);
    if (*bsynth) return run_bench_synthetic(o);
    if (*reg) return run_register(o);
    if (*gen) return run_gen_scene(o);
  } catch (const cp::RegistrationError& e) {
    std::cerr << "registration failed: " << e.what() << '\n';
    return kExitRegistration;
  } catch (const cp::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const cp::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const cp::ResourceError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitInput;
}
