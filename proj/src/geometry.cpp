#include "pathmerge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pathmerge {

namespace {

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

double orient(const Point2& a, const Point2& b, const Point2& c) { return cross(b - a, c - a); }

Aabb box_of(std::span<const Point2> pts) {
  Aabb box;
  box.lo = box.hi = pts.front();
  for (const auto& p : pts) {
    box.lo = box.lo.cwiseMin(p);
    box.hi = box.hi.cwiseMax(p);
  }
  return box;
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

// Largest separation of the two projected intervals over the edge normals of `a`.
double max_separation(std::span<const Point2> a, std::span<const Point2> b) {
  double best = -std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 edge = a[(i + 1) % n] - a[i];
    const double len = edge.norm();
    if (len <= 0.0) continue;
    const Point2 normal(edge.y() / len, -edge.x() / len);  // outward for CCW
    double max_a = -std::numeric_limits<double>::infinity();
    for (const auto& p : a) max_a = std::max(max_a, normal.dot(p));
    double min_b = std::numeric_limits<double>::infinity();
    for (const auto& p : b) min_b = std::min(min_b, normal.dot(p));
    best = std::max(best, min_b - max_a);
  }
  return best;
}

bool point_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  return orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0;
}

bool convex_ccw(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) < -kGeomTol) return false;
  }
  return signed_area(pts) > 0.0;
}

}  // namespace

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double Aabb::gap(const Aabb& other) const {
  const double dx = std::max({0.0, other.lo.x() - hi.x(), lo.x() - other.hi.x()});
  const double dy = std::max({0.0, other.lo.y() - hi.y(), lo.y() - other.hi.y()});
  return std::hypot(dx, dy);
}

double signed_area(std::span<const Point2> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
  return 0.5 * s;
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool segments_intersect(const Point2& a0, const Point2& a1, const Point2& b0, const Point2& b1) {
  const double d1 = orient(b0, b1, a0);
  const double d2 = orient(b0, b1, a1);
  const double d3 = orient(a0, a1, b0);
  const double d4 = orient(a0, a1, b1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(a0, b0, b1)) return true;
  if (d2 == 0 && on_segment(a1, b0, b1)) return true;
  if (d3 == 0 && on_segment(b0, a0, a1)) return true;
  if (d4 == 0 && on_segment(b1, a0, a1)) return true;
  return false;
}

double segment_segment_distance(const Point2& a0, const Point2& a1, const Point2& b0,
                                const Point2& b1) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                   point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

bool convex_intersect(std::span<const Point2> a, std::span<const Point2> b) {
  return max_separation(a, b) <= kGeomTol && max_separation(b, a) <= kGeomTol;
}

namespace {

double boundary_distance(std::span<const Point2> a, std::span<const Point2> b) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      best = std::min(best, segment_segment_distance(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb]));
    }
  }
  return best;
}

}  // namespace

double convex_distance(std::span<const Point2> a, std::span<const Point2> b) {
  if (convex_intersect(a, b)) return 0.0;
  return boundary_distance(a, b);
}

std::vector<std::vector<int>> ear_clip(std::span<const Point2> pts) {
  std::vector<int> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::vector<int>> tris;
  while (idx.size() > 3) {
    const std::size_t n = idx.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n && !clipped; ++i) {
      const int ip = idx[(i + n - 1) % n];
      const int ic = idx[i];
      const int in = idx[(i + 1) % n];
      const Point2& a = pts[ip];
      const Point2& b = pts[ic];
      const Point2& c = pts[in];
      if (orient(a, b, c) <= 0.0) continue;
      bool empty = true;
      for (int k : idx) {
        if (k == ip || k == ic || k == in) continue;
        if (point_in_triangle(pts[k], a, b, c)) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      tris.push_back({ip, ic, in});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) {
      // Only collinear vertices remain as candidates; drop one.
      bool dropped = false;
      for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = pts[idx[(i + n - 1) % n]];
        const Point2& b = pts[idx[i]];
        const Point2& c = pts[idx[(i + 1) % n]];
        if (std::abs(orient(a, b, c)) <= kGeomTol) {
          idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
          dropped = true;
          break;
        }
      }
      if (!dropped) throw std::invalid_argument("ear clipping failed: polygon is not simple");
    }
  }
  if (orient(pts[idx[0]], pts[idx[1]], pts[idx[2]]) > 0.0) tris.push_back(idx);
  return tris;
}

Polygon Polygon::make(std::vector<Point2> vertices, std::vector<std::vector<int>> convex_parts) {
  const std::size_t n = vertices.size();
  if (n < 3) {
    throw std::invalid_argument("polygon needs at least 3 vertices, got " + std::to_string(n));
  }
  for (const auto& v : vertices) {
    if (!v.allFinite()) throw std::invalid_argument("polygon vertex is not finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if ((vertices[i] - vertices[(i + 1) % n]).norm() <= kGeomTol) {
      throw std::invalid_argument("polygon has repeated consecutive vertices");
    }
  }
  const double area = signed_area(vertices);
  if (area <= 0.0) throw std::invalid_argument("polygon must be counter-clockwise with positive area");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n])) {
        throw std::invalid_argument("polygon is self-intersecting");
      }
    }
  }

  Polygon poly;
  poly.vertices_ = std::move(vertices);
  if (convex_parts.empty()) {
    if (convex_ccw(poly.vertices_)) {
      std::vector<int> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
      poly.parts_.push_back(std::move(all));
    } else {
      poly.parts_ = ear_clip(poly.vertices_);
    }
  } else {
    double parts_area = 0.0;
    for (const auto& part : convex_parts) {
      if (part.size() < 3) throw std::invalid_argument("convex part needs at least 3 indices");
      std::vector<Point2> pts;
      for (int k : part) {
        if (k < 0 || static_cast<std::size_t>(k) >= n) {
          throw std::invalid_argument("convex part index out of range");
        }
        pts.push_back(poly.vertices_[static_cast<std::size_t>(k)]);
      }
      if (!convex_ccw(pts)) throw std::invalid_argument("convex part is not convex and CCW");
      parts_area += signed_area(pts);
    }
    if (std::abs(parts_area - area) > 1e-9 * std::max(1.0, area)) {
      throw std::invalid_argument("convex parts do not cover the polygon");
    }
    poly.parts_ = std::move(convex_parts);
  }
  poly.refresh_cache();
  return poly;
}

Polygon Polygon::rectangle(double x0, double y0, double x1, double y1) {
  return make({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

bool Polygon::is_convex() const {
  return parts_.size() == 1 && parts_.front().size() == vertices_.size();
}

double Polygon::area() const { return signed_area(vertices_); }

double Polygon::radius() const {
  double r = 0.0;
  for (const auto& v : vertices_) r = std::max(r, v.norm());
  return r;
}

void Polygon::refresh_cache() {
  part_points_.clear();
  part_boxes_.clear();
  for (const auto& part : parts_) {
    std::vector<Point2> pts;
    pts.reserve(part.size());
    for (int k : part) pts.push_back(vertices_[static_cast<std::size_t>(k)]);
    part_boxes_.push_back(box_of(pts));
    part_points_.push_back(std::move(pts));
  }
  box_ = box_of(vertices_);
}

Polygon Polygon::transformed(const Pose2& pose) const {
  const Eigen::Rotation2Dd rot(pose.theta);
  const Point2 t = pose.translation();
  Polygon out;
  out.vertices_.reserve(vertices_.size());
  for (const auto& v : vertices_) out.vertices_.push_back(rot * v + t);
  out.parts_ = parts_;
  out.refresh_cache();
  return out;
}

Polygon transform_polygon(const Polygon& poly, const Pose2& pose) { return poly.transformed(pose); }

bool polygons_intersect(const Polygon& a, const Polygon& b) {
  if (a.box_.gap(b.box_) > kGeomTol) return false;
  for (std::size_t i = 0; i < a.part_points_.size(); ++i) {
    for (std::size_t j = 0; j < b.part_points_.size(); ++j) {
      if (a.part_boxes_[i].gap(b.part_boxes_[j]) > kGeomTol) continue;
      if (convex_intersect(a.part_points_[i], b.part_points_[j])) return true;
    }
  }
  return false;
}

double polygon_distance_bounded(const Polygon& a, const Polygon& b, double upper) {
  double best = upper;
  if (a.box_.gap(b.box_) >= best) return best;
  for (std::size_t i = 0; i < a.part_points_.size(); ++i) {
    for (std::size_t j = 0; j < b.part_points_.size(); ++j) {
      const double box_gap = a.part_boxes_[i].gap(b.part_boxes_[j]);
      if (box_gap >= best) continue;
      // Same box pre-test as polygons_intersect so that distance 0 <=> intersect.
      const double d = box_gap > kGeomTol ? boundary_distance(a.part_points_[i], b.part_points_[j])
                                          : convex_distance(a.part_points_[i], b.part_points_[j]);
      best = std::min(best, d);
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

double polygon_distance(const Polygon& a, const Polygon& b) {
  return polygon_distance_bounded(a, b, std::numeric_limits<double>::infinity());
}

}  // namespace pathmerge
