#pragma once

// Baseline path generators: PRM with three cycle policies, RRT, and the
// random shortcut post-processor.

#include "pathmerge/path.hpp"
#include "pathmerge/scene.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace pathmerge {

enum class CycleMode { NoCycles, AllCycles, UsefulCycles };

struct PrmParams {
  std::size_t n_samples = 1000;  // free milestones to add
  std::size_t k_neighbors = 15;
  CycleMode cycle_mode = CycleMode::NoCycles;
  double gamma = 3.0;  // UsefulCycles shortcut factor, > 1
  double time_budget_s = std::numeric_limits<double>::infinity();
  /// Stop once this many local-planner calls were spent (0 = unlimited).
  std::size_t max_local_planner_calls = 0;
  std::uint64_t seed = 0;
};

struct Roadmap {
  std::vector<Config> nodes;  // 0 = start, 1 = goal
  struct Edge {
    std::size_t u, v;
    double length;
  };
  std::vector<Edge> edges;

  std::size_t component_count() const;
};

struct PlanResult {
  std::optional<Path> path;
  std::size_t local_planner_calls = 0;
  std::size_t iterations = 0;
  double wall_time_s = 0.0;
  std::string diagnostic;  // set on failure

  bool ok() const { return path.has_value(); }
};

struct PrmResult : PlanResult {
  Roadmap roadmap;
};

/// Throws std::invalid_argument for k_neighbors < 1 or gamma <= 1 in UsefulCycles mode.
PrmResult prm_plan(const Scene& scene, const PrmParams& params);

struct RrtParams {
  double step = 0.5;
  double goal_bias = 0.05;
  std::size_t max_iters = 20000;
  std::uint64_t seed = 0;
};

PlanResult rrt_plan(const Scene& scene, const RrtParams& params);

struct ShortcutResult {
  Path path;
  std::size_t local_planner_calls = 0;
};

/// Repeatedly joins two random non-adjacent nodes when the local planner
/// allows it. Never lengthens the path.
ShortcutResult shortcut(const Scene& scene, const Path& path, std::size_t iters, std::uint64_t seed);

std::string cycle_mode_name(CycleMode mode);
/// Accepts none, all, useful.
CycleMode parse_cycle_mode(const std::string& name);

}  // namespace pathmerge
