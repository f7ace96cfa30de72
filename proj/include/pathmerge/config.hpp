#pragma once

#include "pathmerge/geometry.hpp"

#include <compare>
#include <vector>

namespace pathmerge {

/// A point in configuration space: one planar pose per moving body.
struct Config {
  std::vector<Pose2> poses;

  Config() = default;
  explicit Config(std::vector<Pose2> p) : poses(std::move(p)) {}
  Config(std::initializer_list<Pose2> p) : poses(p) {}

  std::size_t bodies() const { return poses.size(); }
  std::size_t dof() const { return 3 * poses.size(); }

  bool operator==(const Config&) const = default;
};

/// Lexicographic order over (x, y, theta) of each body.
bool config_less(const Config& a, const Config& b);

struct MetricWeights {
  double w_trans = 1.0;
  double w_rot = 0.0;

  bool operator==(const MetricWeights&) const = default;
};

/// Signed shortest rotation from `from` to `to`, in (-pi, pi]. An exact
/// half turn resolves to +pi.
double angle_delta(double from, double to);

/// Weighted L2 metric with shortest-arc rotation differences. Throws
/// std::invalid_argument when body counts differ.
double config_distance(const Config& a, const Config& b, const MetricWeights& w);

/// Straight-line interpolation, shortest arc in every angle. Throws
/// std::invalid_argument for t outside [0,1] or mismatched body counts.
Config interpolate(const Config& a, const Config& b, double t);

/// True when every coordinate differs by at most `tol` (angles via shortest arc).
bool configs_close(const Config& a, const Config& b, double tol = 1e-9);

}  // namespace pathmerge
