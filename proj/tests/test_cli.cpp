#include "helpers.hpp"
#include "pathmerge/bench.hpp"
#include "pathmerge/cli.hpp"
#include "pathmerge/hgraph.hpp"
#include "pathmerge/io.hpp"
#include "pathmerge/quality.hpp"
#include "pathmerge/render.hpp"

#include <doctest.h>

#include <json.hpp>

#include <set>
#include <sstream>

using namespace pathmerge;
using nlohmann::json;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

Scene walled_goal_scene() {
  Scene s = testutil::empty_scene();
  s.obstacles = {Polygon::rectangle(16.0, 2.0, 16.5, 8.0), Polygon::rectangle(16.0, 7.5, 20.0, 8.0),
                 Polygon::rectangle(16.0, 2.0, 20.0, 2.5)};
  return s;
}

}  // namespace

TEST_CASE("path file round-trip and errors") {
  PathFile f{"abc", 3, Path{{Config{Pose2(1, 2, 0.5)}, Config{Pose2(3.25, 4, 6)}}}, {"prm-none", 7, 0.25}};
  const auto back = read_path_json(write_path_json(f));
  CHECK(back.scene_hash == "abc");
  CHECK(back.dof == 3);
  CHECK(back.path == f.path);
  CHECK(back.meta.planner == "prm-none");
  CHECK(back.meta.seed == 7);
  CHECK(back.meta.wall_time_s == 0.25);

  auto doc = json::parse(write_path_json(f));
  doc.erase("nodes");
  CHECK_THROWS_WITH_AS(read_path_json(doc.dump()), doctest::Contains("nodes"), std::runtime_error);
  doc = json::parse(write_path_json(f));
  doc["dof"] = 6;
  CHECK_THROWS_AS(read_path_json(doc.dump()), std::runtime_error);
  doc = json::parse(write_path_json(f));
  doc["nodes"][0] = json::parse("[[1, 2]]");
  CHECK_THROWS_AS(read_path_json(doc.dump()), std::runtime_error);
  CHECK_THROWS_AS(read_path_json("[1,"), std::runtime_error);
}

TEST_CASE("H-Graph and alignment dumps") {
  const Scene s = testutil::empty_scene();
  Path a{{s.start, Config{Pose2(10, 8, 0)}, s.goal}};
  Path b{{s.start, Config{Pose2(10, 2, 0)}, s.goal}};
  const auto g = build_hgraph(s, {a, b}, AllPairs{});
  const auto j = hgraph_to_json(g);
  CHECK(j["variant"] == "all-pairs");
  CHECK(j["nodes"].size() == 4);
  CHECK(j["nodes"][0]["origin"] == "start");
  CHECK(j["nodes"][1]["origin"] == "goal");
  CHECK(j["nodes"][2]["origin"]["path"] == 0);
  CHECK(j["nodes"][3]["origin"]["path"] == 1);
  CHECK(j["edges"].size() == g.edges.size());
  CHECK(j["edges"][0].contains("min_clearance"));
  CHECK(j["stats"]["local_planner_calls"] == g.stats.local_planner_calls);

  Alignment al{{EditOp::match(0, 0), EditOp::gap_q(1)}, 1.5};
  const auto aj = alignment_to_json(al);
  CHECK(aj["cost"] == 1.5);
  CHECK(aj["ops"][1]["op"] == "gap_q");
  CHECK(aj["ops"][1]["j"] == 1);
}

TEST_CASE("cli plan, evaluate, hybridize") {
  testutil::TempDir dir("cli");
  const auto maze = dir.file("maze.json"), grid = dir.file("grid.json");
  REQUIRE(run_cli({"scene", "--generator", "maze", "--out", maze}) == 0);
  REQUIRE(run_cli({"scene", "--generator", "grid", "--out", grid}) == 0);

  // Generous maze run, then evaluate its file.
  const auto mp = dir.file("m.json");
  CHECK(run_cli({"plan", "--scene", maze, "--planner", "prm", "--samples", "2000", "--seed", "4", "--out", mp}) == 0);
  CHECK(run_cli({"evaluate", "--scene", maze, "--paths", mp}) == 0);
  const auto rp = dir.file("r.json");
  CHECK(run_cli({"plan", "--scene", maze, "--planner", "rrt", "--step", "0.3", "--max-iters", "50000", "--seed", "4",
                 "--out", rp}) == 0);
  CHECK(run_cli({"evaluate", "--scene", maze, "--paths", rp}) == 0);

  // Determinism given the seed.
  const auto mp2 = dir.file("m2.json");
  CHECK(run_cli({"plan", "--scene", maze, "--samples", "2000", "--seed", "4", "--out", mp2}) == 0);
  CHECK(load_path_file(mp).path == load_path_file(mp2).path);

  const auto walled = dir.file("walled.json");
  write_text_file(walled, serialize_scene(walled_goal_scene()));
  CHECK(run_cli({"plan", "--scene", walled, "--samples", "200", "--seed", "1", "--out", dir.file("w.json")}) == 2);
  CHECK(run_cli({"plan", "--scene", dir.file("missing.json"), "--seed", "1", "--out", dir.file("x.json")}) == 1);
  CHECK(run_cli({"plan", "--scene", maze, "--out", dir.file("x.json")}) == 1);  // no seed
  CHECK(run_cli({"plan", "--scene", maze, "--planner", "bogus", "--seed", "1", "--out", dir.file("x.json")}) == 1);
  CHECK(run_cli({"plan", "--scene", maze, "--cycles", "useful", "--gamma", "0.5", "--seed", "1", "--out",
                 dir.file("x.json")}) == 1);

  // Three grid paths, neighbourhood, length: the hybrid is no longer than any input.
  std::vector<std::string> inputs;
  for (int r = 0; inputs.size() < 3 && r < 10; ++r) {
    const auto f = dir.file("g" + std::to_string(r) + ".json");
    if (run_cli({"plan", "--scene", grid, "--samples", "3000", "--seed", std::to_string(r), "--out", f}) == 0) {
      inputs.push_back(f);
    }
  }
  REQUIRE(inputs.size() == 3);
  const auto out = dir.file("h.json"), stats = dir.file("stats.csv"), graph = dir.file("graph.json");
  std::vector<std::string> args{"hybridize", "--scene", grid, "--paths"};
  args.insert(args.end(), inputs.begin(), inputs.end());
  for (const char* a : {"--variant", "neighborhood", "--measure", "length", "--out"}) args.push_back(a);
  args.insert(args.end(), {out, "--stats", stats, "--graph", graph});
  REQUIRE(run_cli(args) == 0);
  const Scene gs = load_scene_file(grid);
  double shortest = 1e300;
  for (const auto& f : inputs) shortest = std::min(shortest, path_length(load_path_file(f).path, gs.weights));
  const auto hybrid = load_path_file(out);
  CHECK(path_length(hybrid.path, gs.weights) <= shortest);
  CHECK(hybrid.scene_hash == scene_hash(gs));
  CHECK(run_cli({"evaluate", "--scene", grid, "--paths", out}) == 0);
  const auto rows = split_lines(read_text_file(stats));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "variant,candidate_pairs,local_planner_calls,bridges_added,build_time_s,measure,input_best,input_mean,output");
  CHECK(split_csv(rows[1])[5] == "length");
  CHECK(json::parse(read_text_file(graph))["variant"] == "neighborhood");

  // Single input keeps its quality, for kinv via --k.
  const auto single = dir.file("single.json");
  REQUIRE(run_cli({"hybridize", "--scene", maze, "--paths", mp, "--measure", "kinv", "--k", "3", "--variant", "edit",
                   "--out", single}) == 0);
  const Scene ms = load_scene_file(maze);
  const auto k3 = QualityMeasure::k_inverse(3);
  CHECK(evaluate(ms, load_path_file(single).path, k3) <= evaluate(ms, load_path_file(mp).path, k3));

  // Mismatched scene hashes are rejected before any work.
  CHECK(run_cli({"hybridize", "--scene", grid, "--paths", inputs[0], mp, "--out", dir.file("bad.json")}) == 1);
  CHECK(run_cli({"hybridize", "--scene", maze, "--paths", inputs[0], "--out", dir.file("bad.json")}) == 1);
  CHECK(run_cli({"hybridize", "--scene", grid, "--paths", inputs[0], "--measure", "avg-clearance", "--out",
                 dir.file("bad.json")}) == 1);
  CHECK_FALSE(std::filesystem::exists(dir.file("bad.json")));

  // evaluate: explicit measures and CSV.
  const auto csv = dir.file("eval.csv");
  CHECK(run_cli({"evaluate", "--scene", maze, "--paths", mp, rp, "--measure", "length", "--measure", "bottleneck",
                 "--csv", csv}) == 0);
  const auto ev = split_lines(read_text_file(csv));
  REQUIRE(ev.size() == 5);
  CHECK(ev[0] == "path,measure,value");
  CHECK(split_csv(ev[1])[1] == "length");
  CHECK(std::stod(split_csv(ev[1])[2]) == doctest::Approx(path_length(load_path_file(mp).path, ms.weights)).epsilon(1e-5));
  CHECK(run_cli({"evaluate", "--scene", maze, "--paths", mp, "--measure", "nope"}) == 1);

  const auto al = dir.file("align.json");
  CHECK(run_cli({"align", "--scene", maze, "--paths", mp, rp, "--out", al}) == 0);
  CHECK(json::parse(read_text_file(al)).contains("ops"));
}

TEST_CASE("render") {
  const Scene s = make_maze_scene();
  const std::string bare = render_svg(s, {});
  CHECK(bare.find("version=\"1.1\"") != std::string::npos);
  const auto start = bare.find("<g id=\"obstacles\""), stop = bare.find("</g>", start);
  CHECK(count(bare.substr(start, stop - start), "<polygon") == s.obstacles.size());
  CHECK(count(bare, "<polyline") == 0);

  const Path a{{s.start, s.goal}};
  const Path b{{s.start, Config{Pose2(5, 5, 0)}, s.goal}};
  const std::string two = render_svg(s, {a, b});
  CHECK(count(two, "<polyline") == 2);
  CHECK(two == render_svg(s, {a, b}));
  CHECK(two.find("id=\"start\"") != std::string::npos);
  CHECK(two.find("id=\"goal\"") != std::string::npos);

  testutil::TempDir dir("render");
  const auto scene = dir.file("s.json");
  write_text_file(scene, serialize_scene(s));
  CHECK(run_cli({"render", "--scene", scene, "--out", dir.file("a.svg")}) == 0);
  CHECK(run_cli({"render", "--scene", scene, "--out", dir.file("b.svg")}) == 0);
  CHECK(read_text_file(dir.file("a.svg")) == read_text_file(dir.file("b.svg")));
  CHECK(run_cli({"render", "--scene", dir.file("none.json"), "--out", dir.file("c.svg")}) == 1);
}

TEST_CASE("bench report structure and determinism") {
  testutil::TempDir dir("bench");
  const json cfg = {{"scenes", {"grid"}},
                    {"seeds", {{"count", 10}}},
                    {"input_paths", 3},
                    {"budget", {{"unit", "calls"}, {"short_run", 1500}}},
                    {"short_samples", 800},
                    {"measures", {"length", "kinv:3", "bottleneck", "avg-clearance"}}};
  write_text_file(dir.file("cfg.json"), cfg.dump());
  REQUIRE(run_cli({"bench", "--config", dir.file("cfg.json"), "--out", dir.file("a.csv")}) == 0);
  REQUIRE(run_cli({"bench", "--config", dir.file("cfg.json"), "--out", dir.file("b.csv"), "--threads", "2"}) == 0);
  const auto a = split_lines(read_text_file(dir.file("a.csv")));
  const auto b = split_lines(read_text_file(dir.file("b.csv")));
  CHECK(a[0] == "scene_id,method,seed,success,wall_time_s,local_planner_calls,measure_name,value");
  REQUIRE(a.size() == 1 + 10 * 5 * 4);
  REQUIRE(b.size() == a.size());
  std::set<std::string> methods;
  for (std::size_t i = 1; i < a.size(); ++i) {
    auto ra = split_csv(a[i]), rb = split_csv(b[i]);
    REQUIRE(ra.size() == 8);
    methods.insert(ra[1]);
    ra[4] = rb[4] = "";  // wall time is the only machine-dependent column
    CHECK(ra == rb);
    CHECK((ra[3] == "true" || ra[3] == "false"));
    if (ra[3] == "true") CHECK_FALSE(ra[7].empty());
  }
  CHECK(methods == std::set<std::string>{"hybrid-neighborhood", "prm-all", "prm-none", "prm-shortcut", "prm-useful"});

  // Call budgets: long runs get what the hybrid pipeline spent (up to one sample's connections).
  const auto rows = run_bench(parse_bench_config(cfg));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].method != "prm-none" || rows[i].measure_name != "length") continue;
    for (const auto& h : rows) {
      if (h.method == "hybrid-neighborhood" && h.seed == rows[i].seed && h.measure_name == "length") {
        CHECK(rows[i].local_planner_calls >= h.local_planner_calls);
        CHECK(rows[i].local_planner_calls <= h.local_planner_calls + 15);
      }
    }
  }

  write_text_file(dir.file("bad.json"), R"({"scenes": ["grid"], "seeds": [1], "budget": {"short_run": -1}})");
  CHECK(run_cli({"bench", "--config", dir.file("bad.json"), "--out", dir.file("c.csv")}) == 1);
  write_text_file(dir.file("bad2.json"), R"({"scenes": ["grid"], "seeds": [1], "budget": {"short_run": 1}, "colour": 3})");
  CHECK(run_cli({"bench", "--config", dir.file("bad2.json"), "--out", dir.file("c.csv")}) == 1);
  write_text_file(dir.file("bad3.json"), "{");
  CHECK(run_cli({"bench", "--config", dir.file("bad3.json"), "--out", dir.file("c.csv")}) == 1);
}

TEST_CASE("bench wall-time budgets are matched to the hybrid pipeline") {
  json cfg = {{"scenes", {"grid"}},
              {"seeds", {3}},
              {"methods", {"hybrid", "prm-none", "prm-useful"}},
              {"budget", {{"unit", "seconds"}, {"short_run", 0.2}}},
              {"measures", {"length"}}};
  const auto rows = run_bench(parse_bench_config(cfg));
  REQUIRE(rows.size() == 3);
  const double hybrid = rows[0].wall_time_s;
  CHECK(rows[0].method == "hybrid-neighborhood");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(rows[i].wall_time_s - hybrid) <= 0.1 * hybrid);
  }
}
