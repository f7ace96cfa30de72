#include "pathmerge/path.hpp"

#include "pathmerge/cspace.hpp"

namespace pathmerge {

std::string check_path(const Scene& scene, const Path& path) {
  if (path.size() < 2) return "path has fewer than 2 nodes";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path.nodes[i].bodies() != scene.robot_bodies.size()) {
      return "node " + std::to_string(i) + " has the wrong dof";
    }
    if (!is_free(scene, path.nodes[i])) return "node " + std::to_string(i) + " is not free";
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!local_plan(scene, path.nodes[i], path.nodes[i + 1])) {
      return "edge " + std::to_string(i) + " fails the local planner";
    }
  }
  return {};
}

}  // namespace pathmerge
