#include "pathmerge/bench.hpp"

#include "pathmerge/planners.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace pathmerge {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::size_t kUnboundedSamples = 1'000'000'000;

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("bench config: " + what); }

BenchScene parse_scene_entry(const json& j, std::size_t index, const std::string& base_dir) {
  const std::string where = "scenes[" + std::to_string(index) + "]";
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "grid") return {"grid", make_grid_scene()};
    if (name == "maze") return {"maze", make_maze_scene()};
    fail(where + ": unknown generator '" + name + "'");
  }
  if (!j.is_object()) fail(where + ": expected a string or an object");
  if (!j.contains("id") || !j["id"].is_string()) fail(where + ": missing string 'id'");
  BenchScene out;
  out.id = j["id"].get<std::string>();
  if (j.contains("file")) {
    if (!j["file"].is_string()) fail(where + ".file: expected a string");
    std::filesystem::path file = j["file"].get<std::string>();
    if (file.is_relative()) file = std::filesystem::path(base_dir) / file;
    try {
      out.scene = load_scene_file(file.string());
    } catch (const std::exception& e) {
      fail(where + ": " + e.what());
    }
    return out;
  }
  const std::string gen = j.value("generator", "");
  try {
    if (gen == "grid") {
      out.scene = make_grid_scene(j.value("rows", 4), j.value("passages", 4), j.value("shift", 3.0));
    } else if (gen == "maze") {
      out.scene = make_maze_scene();
    } else {
      fail(where + ": needs 'file' or 'generator' (grid, maze)");
    }
  } catch (const json::exception& e) {
    fail(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
  return out;
}

bool non_negative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

template <typename T>
T number(const json& doc, const char* name, T fallback) {
  if (!doc.contains(name)) return fallback;
  const auto& v = doc[name];
  if constexpr (std::is_unsigned_v<T>) {
    if (!non_negative_integer(v)) fail(std::string("'") + name + "' must be a non-negative integer");
  } else {
    if (!v.is_number()) fail(std::string("'") + name + "' must be a number");
  }
  return v.get<T>();
}

struct Run {
  bool ok = false;
  Path path;
  double wall_time_s = 0.0;
  std::size_t calls = 0;
};

PrmParams budgeted(const BenchConfig& cfg, double budget, std::size_t samples) {
  PrmParams p;
  p.n_samples = samples;
  p.k_neighbors = cfg.k_neighbors;
  p.gamma = cfg.gamma;
  if (cfg.unit == BudgetUnit::Seconds) {
    p.time_budget_s = budget;
  } else {
    p.max_local_planner_calls = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(budget)));
  }
  return p;
}

Run run_hybrid(const BenchConfig& cfg, const Scene& scene, std::uint64_t seed) {
  const auto t0 = Clock::now();
  Run run;
  std::vector<Path> inputs;
  for (std::size_t r = 0; r < cfg.input_paths; ++r) {
    PrmParams p = budgeted(cfg, cfg.short_run_budget, cfg.short_samples ? cfg.short_samples : kUnboundedSamples);
    p.seed = seed * 1000 + r;
    auto res = prm_plan(scene, p);
    run.calls += res.local_planner_calls;
    if (res.ok()) inputs.push_back(std::move(*res.path));
  }
  if (!inputs.empty()) {
    const auto graph = build_hgraph(scene, inputs,
                                    make_variant(cfg.variant, cfg.radius_fraction * scene.diameter(), cfg.gap_ext_scale));
    run.calls += graph.stats.local_planner_calls;
    run.path = extract_best_path(graph, cfg.objective);
    run.ok = true;
  }
  run.wall_time_s = seconds_since(t0);
  return run;
}

Run run_long_prm(const BenchConfig& cfg, const Scene& scene, std::uint64_t seed, CycleMode mode, double budget) {
  PrmParams p = budgeted(cfg, budget, kUnboundedSamples);
  p.cycle_mode = mode;
  p.seed = seed * 1000 + 500;
  auto res = prm_plan(scene, p);
  Run run;
  run.ok = res.ok();
  if (run.ok) run.path = std::move(*res.path);
  run.wall_time_s = res.wall_time_s;
  run.calls = res.local_planner_calls;
  return run;
}

Run run_prm_shortcut(const BenchConfig& cfg, const Scene& scene, std::uint64_t seed, double budget) {
  const auto t0 = Clock::now();
  PrmParams p = budgeted(cfg, cfg.short_run_budget, cfg.short_samples ? cfg.short_samples : kUnboundedSamples);
  p.seed = seed * 1000 + 600;
  auto res = prm_plan(scene, p);
  Run run;
  run.calls = res.local_planner_calls;
  if (res.ok()) {
    run.ok = true;
    run.path = std::move(*res.path);
    if (cfg.unit == BudgetUnit::Calls) {
      const auto total = static_cast<std::size_t>(std::llround(budget));
      if (total > run.calls) {
        auto sc = shortcut(scene, run.path, total - run.calls, seed);
        run.path = std::move(sc.path);
        run.calls += sc.local_planner_calls;
      }
    } else {
      for (std::uint64_t chunk = 0; seconds_since(t0) < budget && run.path.size() >= 3; ++chunk) {
        auto sc = shortcut(scene, run.path, 16, seed * 1000 + chunk);
        run.path = std::move(sc.path);
        run.calls += sc.local_planner_calls;
      }
    }
  }
  run.wall_time_s = seconds_since(t0);
  return run;
}

void emit(const BenchConfig& cfg, const Scene& scene, const std::string& scene_id, const std::string& method,
          std::uint64_t seed, const Run& run, std::vector<BenchRow>& rows) {
  for (const auto& m : cfg.measures) {
    BenchRow row{scene_id, method, seed, run.ok, run.wall_time_s, run.calls, m.name(), 0.0};
    row.value = run.ok ? evaluate(scene, run.path, m) : std::nan("");
    rows.push_back(std::move(row));
  }
}

std::vector<BenchRow> run_cell(const BenchConfig& cfg, const BenchScene& bs, std::uint64_t seed) {
  const auto has = [&](const char* m) { return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end(); };
  std::vector<BenchRow> rows;
  const Scene& scene = bs.scene;
  // Every other method is granted what the hybrid pipeline spent.
  const Run hybrid = run_hybrid(cfg, scene, seed);
  const double budget = cfg.unit == BudgetUnit::Seconds ? hybrid.wall_time_s : static_cast<double>(hybrid.calls);
  if (has("hybrid")) emit(cfg, scene, bs.id, "hybrid-" + cfg.variant, seed, hybrid, rows);
  for (CycleMode mode : {CycleMode::NoCycles, CycleMode::AllCycles, CycleMode::UsefulCycles}) {
    const std::string name = "prm-" + cycle_mode_name(mode);
    if (has(name.c_str())) emit(cfg, scene, bs.id, name, seed, run_long_prm(cfg, scene, seed, mode, budget), rows);
  }
  if (has("prm-shortcut")) emit(cfg, scene, bs.id, "prm-shortcut", seed, run_prm_shortcut(cfg, scene, seed, budget), rows);
  return rows;
}

}  // namespace

HGraphVariant make_variant(const std::string& name, double radius, double gap_ext_scale) {
  EditDistance edit;
  edit.gap_ext_scale = gap_ext_scale;
  if (name == "all-pairs") return AllPairs{};
  if (name == "neighborhood") return Neighborhood{radius};
  if (name == "edit") return edit;
  if (name == "edit-neighborhood") return EditDistanceNeighborhood{edit, radius};
  throw std::invalid_argument("unknown variant '" + name + "' (expected all-pairs, neighborhood, edit, edit-neighborhood)");
}

BenchConfig parse_bench_config(const json& doc, const std::string& base_dir) {
  static const std::set<std::string> known = {"scenes",  "seeds",         "methods",         "input_paths",
                                              "budget",  "short_samples", "k_neighbors",     "gamma",
                                              "variant", "radius_fraction", "gap_ext_scale", "objective",
                                              "measures", "threads"};
  if (!doc.is_object()) fail("top level must be an object");
  for (const auto& [k, v] : doc.items()) {
    if (!known.count(k)) fail("unknown key '" + k + "'");
  }
  BenchConfig cfg;

  if (!doc.contains("scenes") || !doc["scenes"].is_array() || doc["scenes"].empty()) {
    fail("'scenes' must be a non-empty array");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc["scenes"].size(); ++i) {
    cfg.scenes.push_back(parse_scene_entry(doc["scenes"][i], i, base_dir));
    if (!ids.insert(cfg.scenes.back().id).second) fail("duplicate scene id '" + cfg.scenes.back().id + "'");
  }

  if (!doc.contains("seeds")) fail("missing 'seeds'");
  const auto& seeds = doc["seeds"];
  if (seeds.is_array()) {
    for (const auto& s : seeds) {
      if (!non_negative_integer(s)) fail("'seeds' entries must be non-negative integers");
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  } else if (seeds.is_object()) {
    const auto count = number<std::uint64_t>(seeds, "count", 0);
    const auto first = number<std::uint64_t>(seeds, "first", 0);
    for (std::uint64_t s = 0; s < count; ++s) cfg.seeds.push_back(first + s);
  } else {
    fail("'seeds' must be an array or {\"count\": N, \"first\": S}");
  }
  if (cfg.seeds.empty()) fail("no seeds");

  if (doc.contains("methods")) {
    static const std::set<std::string> methods = {"hybrid", "prm-none", "prm-all", "prm-useful", "prm-shortcut"};
    if (!doc["methods"].is_array() || doc["methods"].empty()) fail("'methods' must be a non-empty array");
    cfg.methods.clear();
    for (const auto& m : doc["methods"]) {
      if (!m.is_string() || !methods.count(m.get<std::string>())) {
        fail("unknown method " + m.dump() + " (expected hybrid, prm-none, prm-all, prm-useful, prm-shortcut)");
      }
      cfg.methods.push_back(m.get<std::string>());
    }
  }

  cfg.input_paths = number<std::size_t>(doc, "input_paths", cfg.input_paths);
  if (cfg.input_paths < 1) fail("'input_paths' must be >= 1");

  if (!doc.contains("budget") || !doc["budget"].is_object()) fail("missing object 'budget'");
  const auto& budget = doc["budget"];
  const std::string unit = budget.value("unit", "seconds");
  if (unit == "seconds") {
    cfg.unit = BudgetUnit::Seconds;
  } else if (unit == "calls") {
    cfg.unit = BudgetUnit::Calls;
  } else {
    fail("'budget.unit' must be seconds or calls");
  }
  cfg.short_run_budget = number<double>(budget, "short_run", -1.0);
  if (!(cfg.short_run_budget > 0.0) || !std::isfinite(cfg.short_run_budget)) fail("'budget.short_run' must be > 0");

  cfg.short_samples = number<std::size_t>(doc, "short_samples", cfg.short_samples);
  cfg.k_neighbors = number<std::size_t>(doc, "k_neighbors", cfg.k_neighbors);
  if (cfg.k_neighbors < 1) fail("'k_neighbors' must be >= 1");
  cfg.gamma = number<double>(doc, "gamma", cfg.gamma);
  if (!(cfg.gamma > 1.0)) fail("'gamma' must be > 1");
  cfg.radius_fraction = number<double>(doc, "radius_fraction", cfg.radius_fraction);
  if (!(cfg.radius_fraction > 0.0)) fail("'radius_fraction' must be > 0");
  cfg.gap_ext_scale = number<double>(doc, "gap_ext_scale", cfg.gap_ext_scale);
  if (!(cfg.gap_ext_scale >= 0.0)) fail("'gap_ext_scale' must be >= 0");
  cfg.threads = number<unsigned>(doc, "threads", cfg.threads);

  if (doc.contains("variant")) {
    if (!doc["variant"].is_string()) fail("'variant' must be a string");
    cfg.variant = doc["variant"].get<std::string>();
  }
  try {
    make_variant(cfg.variant, 1.0);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }

  try {
    if (doc.contains("objective")) {
      if (!doc["objective"].is_string()) fail("'objective' must be a string");
      cfg.objective = QualityMeasure::parse(doc["objective"].get<std::string>());
    }
    if (doc.contains("measures")) {
      if (!doc["measures"].is_array() || doc["measures"].empty()) fail("'measures' must be a non-empty array");
      cfg.measures.clear();
      for (const auto& m : doc["measures"]) {
        if (!m.is_string()) fail("'measures' entries must be strings");
        cfg.measures.push_back(QualityMeasure::parse(m.get<std::string>()));
      }
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (cfg.objective.kind() == QualityMeasure::Kind::AverageClearance) fail("'objective' cannot be avg-clearance");
  return cfg;
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  struct Cell {
    std::size_t scene;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < config.scenes.size(); ++s) {
    for (auto seed : config.seeds) cells.push_back({s, seed});
  }

  std::vector<BenchRow> rows;
  std::mutex lock;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cells.size();) {
      auto part = run_cell(config, config.scenes[cells[i].scene], cells[i].seed);
      std::lock_guard guard(lock);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  };
  unsigned n = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(cells.size()));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.scene_id, a.method, a.seed, a.measure_name) < std::tie(b.scene_id, b.method, b.seed, b.measure_name);
  });
  return rows;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "scene_id,method,seed,success,wall_time_s,local_planner_calls,measure_name,value\n";
  for (const auto& r : rows) {
    out += r.scene_id + ',' + r.method + ',' + std::to_string(r.seed) + ',' + (r.success ? "true" : "false") + ',' +
           format_value(r.wall_time_s) + ',' + std::to_string(r.local_planner_calls) + ',' + r.measure_name + ',' +
           (r.success ? format_value(r.value) : std::string()) + '\n';
  }
  return out;
}

}  // namespace pathmerge
