#include "pathmerge/cli.hpp"

#include "pathmerge/bench.hpp"
#include "pathmerge/cspace.hpp"
#include "pathmerge/hgraph.hpp"
#include "pathmerge/io.hpp"
#include "pathmerge/pathmatch.hpp"
#include "pathmerge/planners.hpp"
#include "pathmerge/quality.hpp"
#include "pathmerge/render.hpp"
#include "pathmerge/scene.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>

namespace pathmerge {

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kPlannerFailed = 2;

struct SceneArgs {
  std::string file;
  std::optional<double> eps_res;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--scene", file, "Scene JSON file")->required();
    cmd.add_option("--eps-res", eps_res, "Override the local-planner resolution")->check(CLI::PositiveNumber);
  }
  Scene load() const {
    Scene s = load_scene_file(file);
    if (eps_res) s.eps_res = *eps_res;
    return s;
  }
};

// Loads every file and checks hashes and dof before anything is computed.
std::vector<PathFile> load_matching_paths(const Scene& scene, const std::vector<std::string>& files) {
  const std::string hash = scene_hash(scene);
  std::vector<PathFile> out;
  for (const auto& f : files) out.push_back(load_path_file(f));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].scene_hash != out.front().scene_hash) {
      throw std::runtime_error(files[i] + ": scene hash differs from " + files.front());
    }
    if (out[i].scene_hash != hash) {
      throw std::runtime_error(files[i] + ": scene hash " + out[i].scene_hash + " does not match scene (" + hash + ")");
    }
    if (out[i].dof != scene.start.dof()) throw std::runtime_error(files[i] + ": dof does not match scene");
  }
  return out;
}

std::vector<Path> paths_of(const std::vector<PathFile>& files) {
  std::vector<Path> out;
  for (const auto& f : files) out.push_back(f.path);
  return out;
}

// plan ----------------------------------------------------------------------

struct PlanArgs {
  SceneArgs scene;
  std::string planner = "prm";
  std::string cycles = "none";
  double gamma = 3.0;
  std::size_t samples = 1000;
  std::size_t k = 15;
  double budget_s = std::numeric_limits<double>::infinity();
  std::size_t max_calls = 0;
  std::uint64_t seed = 0;
  double step = 0.5;
  double goal_bias = 0.05;
  std::size_t max_iters = 20000;
  std::string out;
};

int cmd_plan(const PlanArgs& a) {
  const Scene scene = a.scene.load();
  PlanResult result;
  std::string planner = a.planner;
  if (a.planner == "prm") {
    PrmParams p;
    p.n_samples = a.samples;
    p.k_neighbors = a.k;
    p.cycle_mode = parse_cycle_mode(a.cycles);
    p.gamma = a.gamma;
    p.time_budget_s = a.budget_s;
    p.max_local_planner_calls = a.max_calls;
    p.seed = a.seed;
    result = prm_plan(scene, p);
    planner += "-" + a.cycles;
  } else {
    RrtParams p;
    p.step = a.step;
    p.goal_bias = a.goal_bias;
    p.max_iters = a.max_iters;
    p.seed = a.seed;
    result = rrt_plan(scene, p);
  }
  if (!result.ok()) {
    std::cerr << "plan: " << planner << " failed: " << result.diagnostic << "\n";
    return kPlannerFailed;
  }
  PathFile file{scene_hash(scene), scene.start.dof(), *result.path, {planner, a.seed, result.wall_time_s}};
  save_path_file(a.out, file);
  std::cout << "nodes " << result.path->size() << " length " << format_value(path_length(*result.path, scene.weights))
            << " local_planner_calls " << result.local_planner_calls << "\n";
  return kOk;
}

// hybridize -----------------------------------------------------------------

struct HybridizeArgs {
  SceneArgs scene;
  std::vector<std::string> paths;
  std::string variant = "neighborhood";
  std::optional<double> radius;
  std::string measure = "length";
  std::optional<double> k;
  double gap_scale = 1.0;
  std::optional<double> gap_ext;
  double gap_init = 0.0;
  double delta_scale = 1.0;
  unsigned threads = 1;
  std::string out;
  std::string graph;
  std::string stats;
};

QualityMeasure objective_of(const std::string& measure, const std::optional<double>& k) {
  if (k) {
    if (measure != "kinv" && measure.rfind("kinv:", 0) != 0) {
      throw std::invalid_argument("--k only applies to --measure kinv");
    }
    return QualityMeasure::k_inverse(*k);
  }
  if (measure == "kinv") return QualityMeasure::k_inverse(3.0);
  return QualityMeasure::parse(measure);
}

int cmd_hybridize(const HybridizeArgs& a) {
  const Scene scene = a.scene.load();
  const auto files = load_matching_paths(scene, a.paths);
  const QualityMeasure objective = objective_of(a.measure, a.k);
  if (objective.kind() == QualityMeasure::Kind::AverageClearance) {
    throw std::invalid_argument("avg-clearance cannot be optimised; pick length, kinv:<k> or bottleneck");
  }
  const double radius = a.radius.value_or(0.15 * scene.diameter());
  HGraphVariant variant = make_variant(a.variant, radius, a.gap_scale);
  auto tune = [&](EditDistance& e) {
    e.match.gap_init = a.gap_init;
    e.match.delta_scale = a.delta_scale;
    if (a.gap_ext) {
      e.auto_gap_ext = false;
      e.match.gap_ext = *a.gap_ext;
    }
  };
  if (auto* e = std::get_if<EditDistance>(&variant)) tune(*e);
  if (auto* e = std::get_if<EditDistanceNeighborhood>(&variant)) tune(e->edit);

  const auto inputs = paths_of(files);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (const auto why = check_path(scene, inputs[i]); !why.empty()) {
      throw std::runtime_error(a.paths[i] + ": invalid path: " + why);
    }
  }
  const HGraph graph = build_hgraph(scene, inputs, variant, BuildOptions{a.threads});
  const Path hybrid = extract_best_path(graph, objective);

  save_path_file(a.out, PathFile{scene_hash(scene), scene.start.dof(), hybrid,
                                 {"hybrid-" + a.variant, 0, graph.stats.build_time_s}});
  if (!a.graph.empty()) write_text_file(a.graph, hgraph_to_json(graph).dump(1) + "\n");

  std::vector<QualityMeasure> report{QualityMeasure::length()};
  report.push_back(objective.kind() == QualityMeasure::Kind::KInverseClearance ? objective
                                                                                : QualityMeasure::k_inverse(3.0));
  report.push_back(QualityMeasure::bottleneck());
  report.push_back(QualityMeasure::average_clearance());

  std::string csv = "variant,candidate_pairs,local_planner_calls,bridges_added,build_time_s,measure,input_best,input_mean,output\n";
  for (const auto& m : report) {
    double best = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const double v = evaluate(scene, inputs[i], m);
      if (i == 0 || m.better(v, best)) best = v;
      sum += v;
    }
    const double out = evaluate(scene, hybrid, m);
    csv += a.variant + ',' + std::to_string(graph.stats.candidate_pairs) + ',' +
           std::to_string(graph.stats.local_planner_calls) + ',' + std::to_string(graph.stats.bridges_added) + ',' +
           format_value(graph.stats.build_time_s) + ',' + m.name() + ',' + format_value(best) + ',' +
           format_value(sum / static_cast<double>(inputs.size())) + ',' + format_value(out) + '\n';
    std::cout << m.name() << " input_best " << format_value(best) << " output " << format_value(out) << "\n";
  }
  std::cout << "local_planner_calls " << graph.stats.local_planner_calls << " bridges_added "
            << graph.stats.bridges_added << "\n";
  if (!a.stats.empty()) write_text_file(a.stats, csv);
  return kOk;
}

// evaluate ------------------------------------------------------------------

struct EvaluateArgs {
  SceneArgs scene;
  std::vector<std::string> paths;
  std::vector<std::string> measures;
  std::string csv;
  bool no_check = false;
};

int cmd_evaluate(const EvaluateArgs& a) {
  const Scene scene = a.scene.load();
  std::vector<QualityMeasure> measures;
  for (const auto& m : a.measures) measures.push_back(QualityMeasure::parse(m));
  if (measures.empty()) {
    measures = {QualityMeasure::length(), QualityMeasure::k_inverse(3.0), QualityMeasure::bottleneck(),
                QualityMeasure::average_clearance()};
  }
  const auto files = load_matching_paths(scene, a.paths);
  if (!a.no_check) {
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (const auto why = check_path(scene, files[i].path); !why.empty()) {
        throw std::runtime_error(a.paths[i] + ": invalid path: " + why);
      }
    }
  }
  std::string csv = "path,measure,value\n";
  for (std::size_t i = 0; i < files.size(); ++i) {
    for (const auto& m : measures) {
      const std::string v = format_value(evaluate(scene, files[i].path, m));
      std::cout << a.paths[i] << ' ' << m.name() << ' ' << v << "\n";
      csv += a.paths[i] + ',' + m.name() + ',' + v + '\n';
    }
  }
  if (!a.csv.empty()) write_text_file(a.csv, csv);
  return kOk;
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
  std::string config;
  std::string out;
  std::optional<unsigned> threads;
};

int cmd_bench(const BenchArgs& a) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(a.config));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(a.config + ": " + e.what());
  }
  const auto base = std::filesystem::path(a.config).parent_path().string();
  BenchConfig cfg = parse_bench_config(doc, base.empty() ? "." : base);
  if (a.threads) cfg.threads = *a.threads;
  const auto rows = run_bench(cfg);
  write_text_file(a.out, bench_csv(rows));
  std::cout << rows.size() << " rows written to " << a.out << "\n";
  return kOk;
}

// render --------------------------------------------------------------------

struct RenderArgs {
  SceneArgs scene;
  std::vector<std::string> paths;
  double scale = 40.0;
  bool no_robot = false;
  std::string out;
};

int cmd_render(const RenderArgs& a) {
  const Scene scene = a.scene.load();
  const auto files = load_matching_paths(scene, a.paths);
  RenderOptions opt;
  opt.pixels_per_unit = a.scale;
  opt.draw_robot = !a.no_robot;
  write_text_file(a.out, render_svg(scene, paths_of(files), opt));
  return kOk;
}

// scene ---------------------------------------------------------------------

struct SceneGenArgs {
  std::string generator = "grid";
  int rows = 4;
  int passages = 4;
  double shift = 3.0;
  std::string out;
};

int cmd_scene(const SceneGenArgs& a) {
  const Scene scene = a.generator == "grid" ? make_grid_scene(a.rows, a.passages, a.shift) : make_maze_scene();
  write_text_file(a.out, serialize_scene(scene) + "\n");
  std::cout << "scene_hash " << scene_hash(scene) << "\n";
  return kOk;
}

// align ---------------------------------------------------------------------

struct AlignArgs {
  SceneArgs scene;
  std::vector<std::string> paths;
  std::optional<double> gap_ext;
  double gap_init = 0.0;
  double delta_scale = 1.0;
  std::string out;
};

int cmd_align(const AlignArgs& a) {
  const Scene scene = a.scene.load();
  const auto files = load_matching_paths(scene, a.paths);
  const Path& p = files[0].path;
  const Path& q = files[1].path;
  MatchParams params;
  params.gap_init = a.gap_init;
  params.delta_scale = a.delta_scale;
  params.gap_ext = a.gap_ext.value_or(default_gap_ext(p, q, a.delta_scale, scene.weights));
  const auto result = match_paths(p, q, params, scene.weights);
  auto doc = alignment_to_json(result.alignment);
  doc["gap_ext"] = params.gap_ext;
  doc["candidates"] = bridge_candidates(p, q, result.alignment);
  const std::string text = doc.dump(1) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(a.out, text);
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Path hybridization toolkit: plan, hybridize, evaluate, bench, render"};
  app.require_subcommand(1);
  int code = kOk;
  std::function<int()> action;

  PlanArgs plan;
  auto* c_plan = app.add_subcommand("plan", "Run a single planner and write a path file");
  plan.scene.add_to(*c_plan);
  c_plan->add_option("--planner", plan.planner)->check(CLI::IsMember({"prm", "rrt"}));
  c_plan->add_option("--cycles", plan.cycles, "PRM cycle policy")->check(CLI::IsMember({"none", "all", "useful"}));
  c_plan->add_option("--gamma", plan.gamma, "Useful-cycle factor (> 1)");
  c_plan->add_option("--samples", plan.samples, "PRM milestones");
  c_plan->add_option("--k", plan.k, "PRM neighbours")->check(CLI::PositiveNumber);
  c_plan->add_option("--budget-s", plan.budget_s, "PRM wall-time budget")->check(CLI::PositiveNumber);
  c_plan->add_option("--max-calls", plan.max_calls, "PRM local-planner call budget (0 = none)");
  c_plan->add_option("--seed", plan.seed)->required();
  c_plan->add_option("--step", plan.step, "RRT step")->check(CLI::PositiveNumber);
  c_plan->add_option("--goal-bias", plan.goal_bias, "RRT goal bias")->check(CLI::Range(0.0, 1.0));
  c_plan->add_option("--max-iters", plan.max_iters, "RRT iterations");
  c_plan->add_option("--out", plan.out, "Output path file")->required();
  c_plan->callback([&] { action = [&] { return cmd_plan(plan); }; });

  HybridizeArgs hyb;
  auto* c_hyb = app.add_subcommand("hybridize", "Build an H-Graph from path files and extract the best hybrid");
  hyb.scene.add_to(*c_hyb);
  c_hyb->add_option("--paths", hyb.paths, "Input path files")->required()->expected(1, -1);
  c_hyb->add_option("--variant", hyb.variant)
      ->check(CLI::IsMember({"all-pairs", "neighborhood", "edit", "edit-neighborhood"}));
  c_hyb->add_option("--radius", hyb.radius, "Neighbourhood radius (default 0.15 x scene diameter)")
      ->check(CLI::PositiveNumber);
  c_hyb->add_option("--measure", hyb.measure, "length, kinv:<k>, kinv, bottleneck");
  c_hyb->add_option("--k", hyb.k, "Exponent for --measure kinv")->check(CLI::NonNegativeNumber);
  c_hyb->add_option("--gap-scale", hyb.gap_scale, "Multiplier on the derived gap cost")->check(CLI::NonNegativeNumber);
  c_hyb->add_option("--gap-ext", hyb.gap_ext, "Fixed per-node gap cost")->check(CLI::NonNegativeNumber);
  c_hyb->add_option("--gap-init", hyb.gap_init, "Gap opening cost")->check(CLI::NonNegativeNumber);
  c_hyb->add_option("--delta-scale", hyb.delta_scale, "Match cost scale")->check(CLI::NonNegativeNumber);
  c_hyb->add_option("--threads", hyb.threads, "Worker threads (0 = all cores)");
  c_hyb->add_option("--out", hyb.out, "Output path file")->required();
  c_hyb->add_option("--graph", hyb.graph, "Optional H-Graph JSON dump");
  c_hyb->add_option("--stats", hyb.stats, "Optional stats CSV");
  c_hyb->callback([&] { action = [&] { return cmd_hybridize(hyb); }; });

  EvaluateArgs ev;
  auto* c_ev = app.add_subcommand("evaluate", "Print quality measures of path files");
  ev.scene.add_to(*c_ev);
  c_ev->add_option("--paths", ev.paths, "Path files")->required()->expected(1, -1);
  c_ev->add_option("--measure", ev.measures, "Measure (repeatable; default all)");
  c_ev->add_option("--csv", ev.csv, "Optional CSV output");
  c_ev->add_flag("--no-check", ev.no_check, "Skip the collision check of the paths");
  c_ev->callback([&] { action = [&] { return cmd_evaluate(ev); }; });

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Run a benchmark matrix from a JSON config");
  c_bench->add_option("--config", bench.config)->required();
  c_bench->add_option("--out", bench.out, "Report CSV")->required();
  c_bench->add_option("--threads", bench.threads, "Parallel cells (0 = all cores)");
  c_bench->callback([&] { action = [&] { return cmd_bench(bench); }; });

  RenderArgs render;
  auto* c_render = app.add_subcommand("render", "Draw a scene and paths as SVG");
  render.scene.add_to(*c_render);
  c_render->add_option("--paths", render.paths, "Path files")->expected(0, -1);
  c_render->add_option("--scale", render.scale, "Pixels per workspace unit")->check(CLI::PositiveNumber);
  c_render->add_flag("--no-robot", render.no_robot, "Omit robot outlines at start and goal");
  c_render->add_option("--out", render.out, "SVG file")->required();
  c_render->callback([&] { action = [&] { return cmd_render(render); }; });

  SceneGenArgs gen;
  auto* c_gen = app.add_subcommand("scene", "Write a built-in scene as JSON");
  c_gen->add_option("--generator", gen.generator)->check(CLI::IsMember({"grid", "maze"}));
  c_gen->add_option("--rows", gen.rows, "Grid obstacle rows");
  c_gen->add_option("--passages", gen.passages, "Grid passages per row");
  c_gen->add_option("--shift", gen.shift, "Grid passage offset between rows");
  c_gen->add_option("--out", gen.out, "Scene file")->required();
  c_gen->callback([&] { action = [&] { return cmd_scene(gen); }; });

  AlignArgs align;
  auto* c_align = app.add_subcommand("align", "Dump the edit-distance alignment of two paths");
  align.scene.add_to(*c_align);
  c_align->add_option("--paths", align.paths, "Exactly two path files")->required()->expected(2);
  c_align->add_option("--gap-ext", align.gap_ext, "Per-node gap cost (default: median step)")
      ->check(CLI::NonNegativeNumber);
  c_align->add_option("--gap-init", align.gap_init)->check(CLI::NonNegativeNumber);
  c_align->add_option("--delta-scale", align.delta_scale)->check(CLI::NonNegativeNumber);
  c_align->add_option("--out", align.out, "JSON file (default stdout)");
  c_align->callback([&] { action = [&] { return cmd_align(align); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }
  try {
    code = action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return code;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"pathmerge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace pathmerge
