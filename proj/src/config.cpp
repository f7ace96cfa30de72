#include "pathmerge/config.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace pathmerge {

namespace {

void require_same_bodies(const Config& a, const Config& b) {
  if (a.bodies() != b.bodies()) {
    throw std::invalid_argument("configuration dof mismatch: " + std::to_string(a.dof()) + " vs " +
                                std::to_string(b.dof()));
  }
}

}  // namespace

bool config_less(const Config& a, const Config& b) {
  if (a.bodies() != b.bodies()) return a.bodies() < b.bodies();
  for (std::size_t i = 0; i < a.bodies(); ++i) {
    const auto& p = a.poses[i];
    const auto& q = b.poses[i];
    if (std::tie(p.x, p.y, p.theta) != std::tie(q.x, q.y, q.theta)) {
      return std::tie(p.x, p.y, p.theta) < std::tie(q.x, q.y, q.theta);
    }
  }
  return false;
}

double angle_delta(double from, double to) {
  double d = std::fmod(to - from, kTwoPi);
  if (d > kPi) d -= kTwoPi;
  if (d <= -kPi) d += kTwoPi;
  return d;
}

double config_distance(const Config& a, const Config& b, const MetricWeights& w) {
  require_same_bodies(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.bodies(); ++i) {
    const double dx = b.poses[i].x - a.poses[i].x;
    const double dy = b.poses[i].y - a.poses[i].y;
    const double dt = std::abs(angle_delta(a.poses[i].theta, b.poses[i].theta));
    sum += w.w_trans * (dx * dx + dy * dy) + w.w_rot * dt * dt;
  }
  return std::sqrt(sum);
}

Config interpolate(const Config& a, const Config& b, double t) {
  require_same_bodies(a, b);
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("interpolation parameter outside [0,1]");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  Config out;
  out.poses.reserve(a.bodies());
  for (std::size_t i = 0; i < a.bodies(); ++i) {
    const auto& p = a.poses[i];
    const auto& q = b.poses[i];
    out.poses.emplace_back(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y),
                           p.theta + t * angle_delta(p.theta, q.theta));
  }
  return out;
}

bool configs_close(const Config& a, const Config& b, double tol) {
  if (a.bodies() != b.bodies()) return false;
  for (std::size_t i = 0; i < a.bodies(); ++i) {
    if (std::abs(a.poses[i].x - b.poses[i].x) > tol) return false;
    if (std::abs(a.poses[i].y - b.poses[i].y) > tol) return false;
    if (std::abs(angle_delta(a.poses[i].theta, b.poses[i].theta)) > tol) return false;
  }
  return true;
}

}  // namespace pathmerge
