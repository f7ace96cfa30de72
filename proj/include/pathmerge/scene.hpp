#pragma once

#include "pathmerge/config.hpp"
#include "pathmerge/geometry.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pathmerge {

struct Bounds {
  Point2 lo{0.0, 0.0};
  Point2 hi{1.0, 1.0};

  double diameter() const { return (hi - lo).norm(); }
  bool contains(const Aabb& box) const {
    return box.lo.x() >= lo.x() && box.lo.y() >= lo.y() && box.hi.x() <= hi.x() &&
           box.hi.y() <= hi.y();
  }
};

/// Immutable planning problem. Robot bodies are given in their local frame
/// with the reference point at the origin (the body centroid).
struct Scene {
  Bounds bounds;
  std::vector<Polygon> robot_bodies;
  std::vector<Polygon> obstacles;
  MetricWeights weights;
  Config start;
  Config goal;
  double eps_res = 0.0;
  double clearance_sample_step = 0.0;
  /// When set, samplers keep every body at its start orientation.
  bool translation_only = false;

  double diameter() const { return bounds.diameter(); }
  /// Lower clamp for clearance values in inverse-clearance weights.
  double clearance_floor() const { return 1e-4 * diameter(); }
};

/// Rejection of a scene document. `field()` names the offending key path,
/// e.g. "query.start" or "obstacles[2]".
class SceneError : public std::runtime_error {
 public:
  SceneError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses and validates a JSON scene document.
Scene load_scene(const std::string& text);
Scene load_scene_file(const std::string& path);

/// Canonical JSON (sorted keys, shortest round-trip numbers, no whitespace).
std::string serialize_scene(const Scene& scene);

/// SHA-256 hex digest of serialize_scene(scene).
std::string scene_hash(const Scene& scene);

/// Checks every scene invariant, including free start and goal. Throws SceneError.
void validate_scene(const Scene& scene);

/// Staggered obstacle rows crossed by an elongated rotating rectangle.
/// Throws std::invalid_argument for parameters that make obstacles overlap
/// or leave the workspace.
Scene make_grid_scene(int rows = 4, int passages_per_row = 4, double shift = 3.0);

/// Passage x-intervals of one row of make_grid_scene, for tests and rendering.
struct GridLayout {
  double width = 0.0;
  double passage_width = 0.0;
  std::vector<double> row_y;                                // row centre lines, top to bottom
  std::vector<std::vector<std::pair<double, double>>> gaps;  // per row
};
GridLayout grid_layout(int rows, int passages_per_row, double shift);

/// Perfect maze (a spanning tree of corridors) for a small translating
/// square. Deterministic.
Scene make_maze_scene();

}  // namespace pathmerge
