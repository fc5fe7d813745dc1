#pragma once

/**
 * Scenario serialization (JSON) and plain-text point/association files.
 *
 * Scenario document:
 *
 *   {
 *     "format": "clipperplus-scenario", "version": 1,
 *     "params": { "n_points", "cube_size", "n_outlier_points",
 *                 "outlier_sphere_radius", "n_associations",
 *                 "outlier_ratio", "seed" },
 *     "epsilon": <double>, "base_epsilon": <double>,
 *     "gt_transform": { "rotation": [[r00,r01,r02],[..],[..]],
 *                       "translation": [tx,ty,tz] },
 *     "cloud_a": [[x,y,z], ...], "cloud_b": [[x,y,z], ...],
 *     "associations": [[a_index, b_index], ...],   // 0-based
 *     "inlier_mask": [true|false, ...]
 *   }
 *
 * Doubles are written in shortest round-trip form, so a write/read cycle is
 * lossless.
 *
 * Text clouds: one point per line, "x y z", '#' starts a comment.
 * Text associations: one pair per line, "a_index b_index" (0-based).
 *
 * Solver parameter overrides: a JSON object with any subset of the
 * SolverParams field names; unknown keys are rejected.
 */

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "clipperplus/errors.hpp"
#include "clipperplus/registration.hpp"

namespace clipperplus {

inline constexpr const char* kScenarioFormat = "clipperplus-scenario";
inline constexpr int kScenarioVersion = 1;

inline nlohmann::json to_json(const Scenario& s) {
  using nlohmann::json;
  auto points = [](const PointCloud& c) {
    json arr = json::array();
    for (const auto& p : c.points) arr.push_back({p.x(), p.y(), p.z()});
    return arr;
  };
  json rot = json::array();
  for (int r = 0; r < 3; ++r) {
    rot.push_back({s.gt_transform.rotation(r, 0), s.gt_transform.rotation(r, 1), s.gt_transform.rotation(r, 2)});
  }
  json assoc = json::array();
  for (const auto& a : s.associations) assoc.push_back({a.a_index, a.b_index});
  json mask = json::array();
  for (bool b : s.inlier_mask) mask.push_back(b);

  const auto& p = s.params;
  return json{
      {"format", kScenarioFormat},
      {"version", kScenarioVersion},
      {"params",
       {{"n_points", p.n_points},
        {"cube_size", p.cube_size},
        {"n_outlier_points", p.n_outlier_points},
        {"outlier_sphere_radius", p.outlier_sphere_radius},
        {"n_associations", p.n_associations},
        {"outlier_ratio", p.outlier_ratio},
        {"seed", p.seed}}},
      {"epsilon", s.epsilon},
      {"base_epsilon", s.base_epsilon},
      {"gt_transform",
       {{"rotation", rot},
        {"translation", {s.gt_transform.translation.x(), s.gt_transform.translation.y(),
                         s.gt_transform.translation.z()}}}},
      {"cloud_a", points(s.cloud_a)},
      {"cloud_b", points(s.cloud_b)},
      {"associations", assoc},
      {"inlier_mask", mask},
  };
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kScenarioFormat) throw InputError("not a scenario document");
    if (j.at("version").get<int>() != kScenarioVersion) throw InputError("unsupported scenario version");

    Scenario s;
    const auto& p = j.at("params");
    s.params.n_points = p.at("n_points").get<std::size_t>();
    s.params.cube_size = p.at("cube_size").get<double>();
    s.params.n_outlier_points = p.at("n_outlier_points").get<std::size_t>();
    s.params.outlier_sphere_radius = p.at("outlier_sphere_radius").get<double>();
    s.params.n_associations = p.at("n_associations").get<std::size_t>();
    s.params.outlier_ratio = p.at("outlier_ratio").get<double>();
    s.params.seed = p.at("seed").get<std::uint64_t>();
    s.epsilon = j.at("epsilon").get<double>();
    s.base_epsilon = j.at("base_epsilon").get<double>();

    const auto& rot = j.at("gt_transform").at("rotation");
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) s.gt_transform.rotation(r, c) = rot.at(r).at(c).get<double>();
    const auto& t = j.at("gt_transform").at("translation");
    s.gt_transform.translation = Eigen::Vector3d(t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>());

    auto read_points = [](const nlohmann::json& arr, PointCloud& c) {
      for (const auto& q : arr) c.points.emplace_back(q.at(0).get<double>(), q.at(1).get<double>(), q.at(2).get<double>());
    };
    read_points(j.at("cloud_a"), s.cloud_a);
    read_points(j.at("cloud_b"), s.cloud_b);
    for (const auto& a : j.at("associations")) {
      s.associations.push_back({a.at(0).get<std::size_t>(), a.at(1).get<std::size_t>()});
    }
    for (const auto& b : j.at("inlier_mask")) s.inlier_mask.push_back(b.get<bool>());
    if (s.inlier_mask.size() != s.associations.size()) throw InputError("inlier_mask length differs from associations");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scenario: ") + e.what());
  }
}

inline void write_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << to_json(s).dump(1) << '\n';
}

inline Scenario read_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return scenario_from_json(j);
}

inline SolverParams solver_params_from_json(const nlohmann::json& j, SolverParams base = {}) {
  if (!j.is_object()) throw InputError("solver parameters must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "sigma") base.sigma = value.get<double>();
      else if (key == "beta") base.beta = value.get<double>();
      else if (key == "tol") base.tol = value.get<double>();
      else if (key == "d0") base.d0 = value.get<double>();
      else if (key == "d_max") base.d_max = value.get<double>();
      else if (key == "max_backtracks") base.max_backtracks = value.get<std::size_t>();
      else if (key == "max_inner_iterations") base.max_inner_iterations = value.get<std::size_t>();
      else if (key == "max_outer_iterations") base.max_outer_iterations = value.get<std::size_t>();
      else throw InputError("unknown solver parameter '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed solver parameters: ") + e.what());
  }
  return base;
}

inline SolverParams read_solver_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return solver_params_from_json(j);
}

namespace detail {

inline bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace detail

inline PointCloud read_point_cloud(std::istream& in) {
  PointCloud c;
  std::string line;
  std::size_t lineno = 0;
  while (detail::next_data_line(in, line, lineno)) {
    std::istringstream ls(line);
    double x, y, z;
    std::string extra;
    if (!(ls >> x >> y >> z) || (ls >> extra)) throw ParseError(lineno, "expected 'x y z'");
    c.points.emplace_back(x, y, z);
  }
  return c;
}

inline std::vector<Association> read_associations(std::istream& in) {
  std::vector<Association> out;
  std::string line;
  std::size_t lineno = 0;
  while (detail::next_data_line(in, line, lineno)) {
    std::istringstream ls(line);
    long long a, b;
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra) || a < 0 || b < 0) {
      throw ParseError(lineno, "expected two non-negative indices");
    }
    out.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
  }
  return out;
}

template <typename Reader>
auto read_file(const std::string& path, Reader&& reader) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.detail());
  }
}

}  // namespace clipperplus
