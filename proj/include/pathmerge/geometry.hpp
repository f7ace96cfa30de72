#pragma once

// Planar polygon primitives: rigid placement, closed-set intersection and
// minimum distance. Kernels operate on convex parts only; a non-convex
// polygon carries its own decomposition.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <span>
#include <vector>

namespace pathmerge {

using Point2 = Eigen::Vector2d;

/// Absolute tolerance for distance comparisons.
inline constexpr double kGeomTol = 1e-9;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Maps any finite angle into [0, 2pi).
double normalize_angle(double theta);

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose2() = default;
  Pose2(double x_, double y_, double theta_) : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  Point2 translation() const { return {x, y}; }
  bool operator==(const Pose2&) const = default;
};

struct Aabb {
  Point2 lo{0.0, 0.0};
  Point2 hi{0.0, 0.0};

  /// Euclidean gap between two boxes (0 when they overlap).
  double gap(const Aabb& other) const;
};

/// Simple CCW polygon with a convex decomposition. Every convex part is a
/// CCW list of indices into `vertices`.
class Polygon {
 public:
  Polygon() = default;

  /// Validates and builds. When `convex_parts` is empty the polygon is used
  /// as-is if convex, otherwise ear-clipped into triangles. Throws
  /// std::invalid_argument on fewer than three vertices, clockwise or
  /// self-intersecting outlines, or malformed parts.
  static Polygon make(std::vector<Point2> vertices,
                      std::vector<std::vector<int>> convex_parts = {});

  /// Axis-aligned rectangle [x0,x1] x [y0,y1].
  static Polygon rectangle(double x0, double y0, double x1, double y1);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& convex_parts() const { return parts_; }
  const Aabb& bounds() const { return box_; }

  /// True when the decomposition is the single part covering the outline.
  bool is_convex() const;

  double area() const;
  /// Largest distance from the origin to a vertex (body radius in its local frame).
  double radius() const;

  /// Rotates by `pose.theta` about the origin then translates. Keeps the
  /// decomposition.
  Polygon transformed(const Pose2& pose) const;

  /// Cached convex part vertex lists, CCW.
  const std::vector<std::vector<Point2>>& part_points() const { return part_points_; }

 private:
  void refresh_cache();

  std::vector<Point2> vertices_;
  std::vector<std::vector<int>> parts_;
  std::vector<std::vector<Point2>> part_points_;
  std::vector<Aabb> part_boxes_;
  Aabb box_;

  friend bool polygons_intersect(const Polygon&, const Polygon&);
  friend double polygon_distance(const Polygon&, const Polygon&);
  friend double polygon_distance_bounded(const Polygon&, const Polygon&, double);
};

Polygon transform_polygon(const Polygon& poly, const Pose2& pose);

/// Closed-set overlap test: touching boundaries intersect.
bool polygons_intersect(const Polygon& a, const Polygon& b);

/// Minimum Euclidean distance between the closed regions; 0 iff they intersect.
double polygon_distance(const Polygon& a, const Polygon& b);

/// As polygon_distance, but may return any value >= `upper` once the true
/// distance is known to exceed it. Used by clearance queries.
double polygon_distance_bounded(const Polygon& a, const Polygon& b, double upper);

// Convex kernels, exposed for tests.
bool convex_intersect(std::span<const Point2> a, std::span<const Point2> b);
double convex_distance(std::span<const Point2> a, std::span<const Point2> b);

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);
double segment_segment_distance(const Point2& a0, const Point2& a1, const Point2& b0,
                                const Point2& b1);
bool segments_intersect(const Point2& a0, const Point2& a1, const Point2& b0, const Point2& b1);

double signed_area(std::span<const Point2> pts);

/// Ear-clipping triangulation of a simple CCW polygon.
std::vector<std::vector<int>> ear_clip(std::span<const Point2> pts);

}  // namespace pathmerge
