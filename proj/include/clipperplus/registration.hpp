#pragma once

/**
 * Point cloud registration on top of the clique solvers: pairwise-consistency
 * graphs from putative associations, closed-form rigid alignment (Arun / SVD),
 * synthetic scenes, and error metrics.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "clipperplus/clipper_plus.hpp"
#include "clipperplus/errors.hpp"
#include "clipperplus/graph.hpp"
#include "clipperplus/random.hpp"

namespace clipperplus {

using Point = Eigen::Vector3d;

struct PointCloud {
  std::vector<Point> points;

  std::size_t size() const noexcept { return points.size(); }
  const Point& operator[](std::size_t i) const { return points[i]; }
  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

struct Association {
  std::size_t a_index = 0;
  std::size_t b_index = 0;
  friend bool operator==(const Association&, const Association&) = default;
  friend auto operator<=>(const Association&, const Association&) = default;
};

struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Point apply(const Point& p) const { return rotation * p + translation; }
  friend bool operator==(const RigidTransform&, const RigidTransform&) = default;
};

/**
 * One vertex per association. Associations p = (i, j) and q = (k, l) are
 * joined when | ||a_i - a_k|| - ||b_j - b_l|| | < epsilon and they share no
 * endpoint (i != k and j != l).
 */
inline Graph build_consistency_graph(const PointCloud& a, const PointCloud& b,
                                     std::span<const Association> associations, double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("consistency threshold must be positive");
  if (associations.empty()) throw InputError("no associations");
  for (std::size_t p = 0; p < associations.size(); ++p) {
    const auto& as = associations[p];
    if (as.a_index >= a.size() || as.b_index >= b.size()) {
      throw InputError("association " + std::to_string(p) + " = (" + std::to_string(as.a_index) + ", " +
                       std::to_string(as.b_index) + ") is out of bounds");
    }
  }
  GraphBuilder builder(associations.size());
  for (std::size_t p = 0; p < associations.size(); ++p) {
    const auto& ap = associations[p];
    for (std::size_t q = p + 1; q < associations.size(); ++q) {
      const auto& aq = associations[q];
      if (ap.a_index == aq.a_index || ap.b_index == aq.b_index) continue;
      const double da = (a[ap.a_index] - a[aq.a_index]).norm();
      const double db = (b[ap.b_index] - b[aq.b_index]).norm();
      if (std::abs(da - db) < epsilon) builder.add_edge(p, q);
    }
  }
  return std::move(builder).build();
}

/**
 * Least-squares rigid transform mapping src[a_index] onto dst[b_index] (Arun
 * et al.): centroids removed, H = sum (a - ca)(b - cb)', H = U S V', R = V U'.
 * A reflection (det R = -1), which arises for coplanar inputs, is corrected by
 * negating the singular direction with the smallest singular value.
 */
inline RigidTransform estimate_rigid_transform(const PointCloud& src, const PointCloud& dst,
                                               std::span<const Association> pairs) {
  if (pairs.size() < 3) {
    throw RegistrationError("rigid alignment needs at least 3 correspondences, got " + std::to_string(pairs.size()));
  }
  for (const auto& p : pairs) {
    if (p.a_index >= src.size() || p.b_index >= dst.size()) throw InputError("correspondence index out of bounds");
  }

  const auto m = static_cast<double>(pairs.size());
  Eigen::Vector3d ca = Eigen::Vector3d::Zero();
  Eigen::Vector3d cb = Eigen::Vector3d::Zero();
  for (const auto& p : pairs) {
    ca += src[p.a_index];
    cb += dst[p.b_index];
  }
  ca /= m;
  cb /= m;

  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d spread = Eigen::Matrix3d::Zero();
  for (const auto& p : pairs) {
    const Eigen::Vector3d x = src[p.a_index] - ca;
    h += x * (dst[p.b_index] - cb).transpose();
    spread += x * x.transpose();
  }

  // Collinear (or coincident) sources leave the rotation about the line undetermined.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(spread, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d ev = es.eigenvalues();  // ascending
  if (!(ev(2) > 0.0) || ev(1) <= 1e-12 * ev(2)) {
    throw RegistrationError("correspondences are collinear or coincident");
  }

  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d v = svd.matrixV();
  const Eigen::Matrix3d& u = svd.matrixU();
  Eigen::Matrix3d r = v * u.transpose();
  if (r.determinant() < 0.0) {
    v.col(2) *= -1.0;
    r = v * u.transpose();
  }

  RigidTransform out;
  out.rotation = r;
  out.translation = cb - r * ca;
  return out;
}

struct RegistrationErrors {
  double rotation_error_deg = 0.0;
  double translation_error_m = 0.0;
};

/// Geodesic angle of R_est R_gt' in degrees, and ||t_est - t_gt||.
inline RegistrationErrors registration_errors(const RigidTransform& estimated, const RigidTransform& gt) {
  const Eigen::Matrix3d dr = estimated.rotation * gt.rotation.transpose();
  const Eigen::Vector3d axis(dr(2, 1) - dr(1, 2), dr(0, 2) - dr(2, 0), dr(1, 0) - dr(0, 1));
  const double angle = std::atan2(0.5 * axis.norm(), 0.5 * (dr.trace() - 1.0));
  return {angle * 180.0 / std::numbers::pi, (estimated.translation - gt.translation).norm()};
}

// Synthetic scenes ---------------------------------------------------------

struct SceneParams {
  std::size_t n_points = 1000;
  double cube_size = 0.2;  ///< metres
  std::size_t n_outlier_points = 1000;
  double outlier_sphere_radius = 1.0;  ///< metres
  std::size_t n_associations = 200;
  double outlier_ratio = 0.5;
  std::uint64_t seed = 0;

  friend bool operator==(const SceneParams&, const SceneParams&) = default;
};

struct Scenario {
  PointCloud cloud_a;
  PointCloud cloud_b;
  std::vector<Association> associations;
  std::vector<bool> inlier_mask;
  RigidTransform gt_transform;
  double epsilon = 0.0;       ///< consistency threshold
  double base_epsilon = 0.0;  ///< mean nearest-neighbour distance of cloud A
  SceneParams params;

  double epsilon_inflation() const { return base_epsilon > 0.0 ? epsilon / base_epsilon : 1.0; }
  std::size_t inlier_count() const {
    return static_cast<std::size_t>(std::count(inlier_mask.begin(), inlier_mask.end(), true));
  }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline double mean_nearest_neighbor_distance(const PointCloud& cloud) {
  if (cloud.size() < 2) throw InputError("nearest-neighbour distance needs at least 2 points");
  double total = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      if (j != i) best = std::min(best, (cloud[i] - cloud[j]).squaredNorm());
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(cloud.size());
}

/// Rotation uniformly distributed on SO(3) (Shoemake's subgroup algorithm).
inline Eigen::Matrix3d random_rotation(Rng& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double u3 = rng.uniform();
  const double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const Eigen::Quaterniond q(b * std::cos(two_pi * u3), a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
                             b * std::sin(two_pi * u3));
  return q.normalized().toRotationMatrix();
}

/// Uniform in the ball of radius r about `center`, by rejection from the bounding cube.
inline Point random_point_in_ball(Rng& rng, const Point& center, double r) {
  for (;;) {
    const Point p(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (p.squaredNorm() <= 1.0) return center + r * p;
  }
}

/// Largest | ||a_i - a_k|| - ||b_j - b_l|| | over pairs of inlier associations.
inline double max_inlier_distance_gap(const Scenario& s) {
  double worst = 0.0;
  for (std::size_t p = 0; p < s.associations.size(); ++p) {
    if (!s.inlier_mask[p]) continue;
    for (std::size_t q = p + 1; q < s.associations.size(); ++q) {
      if (!s.inlier_mask[q]) continue;
      const auto& ap = s.associations[p];
      const auto& aq = s.associations[q];
      const double da = (s.cloud_a[ap.a_index] - s.cloud_a[aq.a_index]).norm();
      const double db = (s.cloud_b[ap.b_index] - s.cloud_b[aq.b_index]).norm();
      worst = std::max(worst, std::abs(da - db));
    }
  }
  return worst;
}

/**
 * Synthetic registration instance.
 *
 * Cloud A: n_points uniform in an axis-aligned cube of side cube_size centred
 * at the origin. epsilon: mean nearest-neighbour distance in A. Cloud B: the
 * first n_points are gt(A) plus per-axis uniform noise in [-eps/2, eps/2];
 * n_outlier_points clutter points follow, uniform in a ball centred on the
 * transformed centroid of A. Ground truth: rotation uniform on SO(3),
 * translation uniform in [-0.5, 0.5]^3 metres.
 *
 * Associations: round(outlier_ratio * n_associations) outliers, the rest
 * inliers (i, i) with distinct i. Outliers are distinct pairs (i, j), j != i,
 * with j anywhere in B. The list is shuffled.
 *
 * Because per-axis noise can move an inlier pair's distance gap past epsilon,
 * epsilon is raised to (1 + kEpsilonMargin) times the largest inlier
 * gap when needed, so that the inliers always form a clique;
 * epsilon_inflation() reports the factor.
 */
/// Relative margin kept above the largest inlier gap when epsilon is raised, so
/// that round-off in distance computations cannot flip an inlier edge.
inline constexpr double kEpsilonMargin = 1e-9;

inline Scenario synthetic_scene(const SceneParams& params) {
  if (!(params.outlier_ratio >= 0.0 && params.outlier_ratio <= 1.0)) {
    throw InputError("outlier ratio must lie in [0, 1]");
  }
  if (params.n_points < 2) throw InputError("synthetic scene needs at least 2 cloud points");
  if (!(params.cube_size > 0.0) || !(params.outlier_sphere_radius >= 0.0)) {
    throw InputError("cube size must be positive and clutter radius non-negative");
  }
  if (params.n_associations == 0) throw InputError("synthetic scene needs at least one association");

  const auto n_out = static_cast<std::size_t>(
      std::llround(params.outlier_ratio * static_cast<double>(params.n_associations)));
  const std::size_t n_in = params.n_associations - n_out;
  const std::size_t n_b = params.n_points + params.n_outlier_points;
  if (n_in > params.n_points) {
    throw InputError("requested " + std::to_string(n_in) + " inliers but the cloud has only " +
                     std::to_string(params.n_points) + " points");
  }
  const std::size_t outlier_pool = params.n_points * (n_b - 1);
  if (n_out > outlier_pool) throw InputError("not enough distinct outlier associations available");

  Scenario s;
  s.params = params;

  Rng cloud_rng(params.seed, Stream::kCloud);
  const double half = params.cube_size / 2.0;
  s.cloud_a.points.reserve(params.n_points);
  for (std::size_t i = 0; i < params.n_points; ++i) {
    const double x = cloud_rng.uniform(-half, half);
    const double y = cloud_rng.uniform(-half, half);
    const double z = cloud_rng.uniform(-half, half);
    s.cloud_a.points.emplace_back(x, y, z);
  }
  s.base_epsilon = mean_nearest_neighbor_distance(s.cloud_a);
  s.epsilon = s.base_epsilon;

  Rng tf_rng(params.seed, Stream::kTransform);
  s.gt_transform.rotation = random_rotation(tf_rng);
  {
    const double x = tf_rng.uniform(-0.5, 0.5);
    const double y = tf_rng.uniform(-0.5, 0.5);
    const double z = tf_rng.uniform(-0.5, 0.5);
    s.gt_transform.translation = Eigen::Vector3d(x, y, z);
  }

  Rng noise_rng(params.seed, Stream::kNoise);
  s.cloud_b.points.reserve(n_b);
  const double hn = s.base_epsilon / 2.0;
  Point centroid = Point::Zero();
  for (const auto& p : s.cloud_a.points) {
    const double x = noise_rng.uniform(-hn, hn);
    const double y = noise_rng.uniform(-hn, hn);
    const double z = noise_rng.uniform(-hn, hn);
    s.cloud_b.points.push_back(s.gt_transform.apply(p) + Point(x, y, z));
    centroid += p;
  }
  centroid = s.gt_transform.apply(centroid / static_cast<double>(params.n_points));

  Rng clutter_rng(params.seed, Stream::kClutter);
  for (std::size_t i = 0; i < params.n_outlier_points; ++i) {
    s.cloud_b.points.push_back(random_point_in_ball(clutter_rng, centroid, params.outlier_sphere_radius));
  }

  Rng assoc_rng(params.seed, Stream::kAssociations);
  // partial Fisher-Yates for n_in distinct inlier indices
  std::vector<std::size_t> idx(params.n_points);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t k = 0; k < n_in; ++k) {
    const auto j = k + static_cast<std::size_t>(assoc_rng.index(idx.size() - k));
    std::swap(idx[k], idx[j]);
  }
  std::vector<std::pair<Association, bool>> drawn;
  drawn.reserve(params.n_associations);
  for (std::size_t k = 0; k < n_in; ++k) drawn.push_back({{idx[k], idx[k]}, true});
  std::set<Association> outliers;
  while (outliers.size() < n_out) {
    const auto i = static_cast<std::size_t>(assoc_rng.index(params.n_points));
    const auto j = static_cast<std::size_t>(assoc_rng.index(n_b));
    if (i == j) continue;
    if (outliers.insert({i, j}).second) drawn.push_back({{i, j}, false});
  }
  assoc_rng.shuffle(drawn);
  for (const auto& [a, inl] : drawn) {
    s.associations.push_back(a);
    s.inlier_mask.push_back(inl);
  }

  const double gap = max_inlier_distance_gap(s);
  if (gap >= s.epsilon) s.epsilon = gap * (1.0 + kEpsilonMargin);
  return s;
}

inline Scenario synthetic_scene(std::size_t n_points, double cube_size, std::size_t n_outlier_points,
                                double outlier_sphere_radius, std::size_t n_associations, double outlier_ratio,
                                std::uint64_t seed) {
  return synthetic_scene(SceneParams{n_points, cube_size, n_outlier_points, outlier_sphere_radius, n_associations,
                                     outlier_ratio, seed});
}

// End-to-end pipeline ------------------------------------------------------

struct RegistrationReport {
  RigidTransform transform;
  std::vector<std::size_t> inliers;  ///< association indices selected by the clique
  ClipperPlusReport clique_report;
  std::size_t graph_size = 0;
  double graph_sparsity = 0.0;
  std::optional<RegistrationErrors> errors;
};

/**
 * Associations -> consistency graph -> CLIPPER+ -> Arun alignment on the
 * clique's associations. Throws RegistrationError when the clique has fewer
 * than 3 members.
 */
inline RegistrationReport register_clouds(const PointCloud& a, const PointCloud& b,
                                          std::span<const Association> associations, double epsilon,
                                          const std::optional<RigidTransform>& gt = std::nullopt,
                                          const SolverParams& params = {}) {
  const Graph g = build_consistency_graph(a, b, associations, epsilon);
  RegistrationReport rep;
  rep.graph_size = g.size();
  rep.graph_sparsity = g.size() >= 2 ? sparsity(g) : 1.0;
  rep.clique_report = clipper_plus(g, params);
  rep.inliers = rep.clique_report.clique.members;
  if (rep.inliers.size() < 3) {
    throw RegistrationError("consistent set has only " + std::to_string(rep.inliers.size()) +
                            " associations; at least 3 are needed");
  }
  std::vector<Association> chosen;
  chosen.reserve(rep.inliers.size());
  for (std::size_t v : rep.inliers) chosen.push_back(associations[v]);
  rep.transform = estimate_rigid_transform(a, b, chosen);
  if (gt) rep.errors = registration_errors(rep.transform, *gt);
  return rep;
}

inline RegistrationReport register_scenario(const Scenario& s, const SolverParams& params = {}) {
  return register_clouds(s.cloud_a, s.cloud_b, s.associations, s.epsilon, s.gt_transform, params);
}

}  // namespace clipperplus
