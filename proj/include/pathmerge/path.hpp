#pragma once

#include "pathmerge/config.hpp"
#include "pathmerge/scene.hpp"

#include <string>
#include <vector>

namespace pathmerge {

/// Discrete motion path: a chain of configurations, start first, goal last.
struct Path {
  std::vector<Config> nodes;

  std::size_t size() const { return nodes.size(); }
  const Config& front() const { return nodes.front(); }
  const Config& back() const { return nodes.back(); }
  bool operator==(const Path&) const = default;
};

/// Empty string when the path is valid for the scene (>= 2 nodes, every
/// node free, every edge passes the local planner), otherwise the reason.
std::string check_path(const Scene& scene, const Path& path);

}  // namespace pathmerge
