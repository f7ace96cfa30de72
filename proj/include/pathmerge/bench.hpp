#pragma once

// Config-driven comparison of hybridization against long planner runs under
// equal budgets.

#include "pathmerge/hgraph.hpp"
#include "pathmerge/quality.hpp"
#include "pathmerge/scene.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace pathmerge {

enum class BudgetUnit { Seconds, Calls };

struct BenchScene {
  std::string id;
  Scene scene;
};

struct BenchConfig {
  std::vector<BenchScene> scenes;
  std::vector<std::uint64_t> seeds;
  /// Subset of hybrid, prm-none, prm-all, prm-useful, prm-shortcut.
  std::vector<std::string> methods{"hybrid", "prm-none", "prm-all", "prm-useful", "prm-shortcut"};
  std::size_t input_paths = 3;
  BudgetUnit unit = BudgetUnit::Seconds;
  double short_run_budget = 1.0;  // per short PRM run, in `unit`
  std::size_t short_samples = 0;  // 0 = bounded by the budget only
  std::size_t k_neighbors = 15;
  double gamma = 3.0;
  std::string variant = "neighborhood";
  double radius_fraction = 0.15;  // of the scene diameter
  double gap_ext_scale = 1.0;
  QualityMeasure objective = QualityMeasure::length();
  std::vector<QualityMeasure> measures{QualityMeasure::length(), QualityMeasure::k_inverse(3.0),
                                       QualityMeasure::bottleneck(), QualityMeasure::average_clearance()};
  unsigned threads = 1;
};

/// Throws std::runtime_error on a malformed document. Scene files are
/// resolved relative to `base_dir`.
BenchConfig parse_bench_config(const nlohmann::json& doc, const std::string& base_dir = ".");

struct BenchRow {
  std::string scene_id;
  std::string method;
  std::uint64_t seed = 0;
  bool success = false;
  double wall_time_s = 0.0;
  std::size_t local_planner_calls = 0;
  std::string measure_name;
  double value = 0.0;
};

/// Rows sorted by (scene_id, method, seed, measure_name).
std::vector<BenchRow> run_bench(const BenchConfig& config);

/// scene_id,method,seed,success,wall_time_s,local_planner_calls,measure_name,value
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Six significant digits (`%.6g`).
std::string format_value(double v);

HGraphVariant make_variant(const std::string& name, double radius, double gap_ext_scale = 1.0);

}  // namespace pathmerge
