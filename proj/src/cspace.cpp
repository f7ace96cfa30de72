#include "pathmerge/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pathmerge {

namespace {

double unit(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

}  // namespace

std::vector<Polygon> place_bodies(const Scene& scene, const Config& c) {
  std::vector<Polygon> placed;
  placed.reserve(scene.robot_bodies.size());
  for (std::size_t i = 0; i < scene.robot_bodies.size(); ++i) {
    placed.push_back(scene.robot_bodies[i].transformed(c.poses.at(i)));
  }
  return placed;
}

double scene_clearance(const Scene& scene, const Config& c) {
  const auto placed = place_bodies(scene, c);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < placed.size(); ++i) {
    for (const auto& obstacle : scene.obstacles) {
      best = polygon_distance_bounded(placed[i], obstacle, best);
      if (best == 0.0) return 0.0;
    }
    for (std::size_t j = i + 1; j < placed.size(); ++j) {
      best = polygon_distance_bounded(placed[i], placed[j], best);
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

bool is_free(const Scene& scene, const Config& c) {
  if (c.bodies() != scene.robot_bodies.size()) return false;
  const auto placed = place_bodies(scene, c);
  for (std::size_t i = 0; i < placed.size(); ++i) {
    if (!scene.bounds.contains(placed[i].bounds())) return false;
    for (const auto& obstacle : scene.obstacles) {
      if (polygons_intersect(placed[i], obstacle)) return false;
    }
    for (std::size_t j = i + 1; j < placed.size(); ++j) {
      if (polygons_intersect(placed[i], placed[j])) return false;
    }
  }
  return true;
}

double motion_extent(const Scene& scene, const Config& a, const Config& b) {
  double extent = 0.0;
  for (std::size_t i = 0; i < a.bodies(); ++i) {
    const double dp = std::hypot(b.poses[i].x - a.poses[i].x, b.poses[i].y - a.poses[i].y);
    const double dr = std::abs(angle_delta(a.poses[i].theta, b.poses[i].theta));
    extent = std::max(extent, dp + scene.robot_bodies.at(i).radius() * dr);
  }
  return extent;
}

bool local_plan(const Scene& scene, const Config& a_in, const Config& b_in, double eps_res) {
  const bool swap = config_less(b_in, a_in);
  const Config& a = swap ? b_in : a_in;
  const Config& b = swap ? a_in : b_in;
  if (!is_free(scene, a) || !is_free(scene, b)) return false;
  const double extent = motion_extent(scene, a, b);
  int levels = 0;
  while (levels < 40 && extent / std::ldexp(1.0, levels) > eps_res) ++levels;
  for (int level = 1; level <= levels; ++level) {
    const double denom = std::ldexp(1.0, level);
    const long count = 1L << (level - 1);
    for (long i = 0; i < count; ++i) {
      const double t = static_cast<double>(2 * i + 1) / denom;
      if (!is_free(scene, interpolate(a, b, t))) return false;
    }
  }
  return true;
}

Config sample_uniform(const Scene& scene, Rng& rng) {
  Config c;
  c.poses.reserve(scene.robot_bodies.size());
  for (std::size_t i = 0; i < scene.robot_bodies.size(); ++i) {
    const double x = scene.bounds.lo.x() + (scene.bounds.hi.x() - scene.bounds.lo.x()) * unit(rng);
    const double y = scene.bounds.lo.y() + (scene.bounds.hi.y() - scene.bounds.lo.y()) * unit(rng);
    double theta = kTwoPi * unit(rng);
    if (scene.translation_only) theta = i < scene.start.bodies() ? scene.start.poses[i].theta : 0.0;
    c.poses.emplace_back(x, y, theta);
  }
  return c;
}

}  // namespace pathmerge
