#pragma once

#include "pathmerge/scene.hpp"

#include <filesystem>
#include <string>

namespace testutil {

// Square robot of half-width h translating in an empty or single-obstacle box.
inline pathmerge::Scene box_scene(double h = 0.5, bool with_obstacle = true) {
  using namespace pathmerge;
  Scene s;
  s.bounds = {{0.0, 0.0}, {20.0, 10.0}};
  s.robot_bodies = {Polygon::rectangle(-h, -h, h, h)};
  if (with_obstacle) s.obstacles = {Polygon::rectangle(9.0, 3.0, 11.0, 7.0)};
  s.weights = {1.0, 0.0};
  s.start = Config{Pose2(2.0, 5.0, 0.0)};
  s.goal = Config{Pose2(18.0, 5.0, 0.0)};
  s.eps_res = 0.01 * s.diameter();
  s.clearance_sample_step = s.eps_res;
  s.translation_only = true;
  return s;
}

inline pathmerge::Scene empty_scene() { return box_scene(0.5, false); }

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("pathmerge_test_" + tag);
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace testutil
