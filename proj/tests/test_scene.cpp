#include "helpers.hpp"
#include "pathmerge/cspace.hpp"
#include "pathmerge/scene.hpp"

#include <doctest.h>

#include <json.hpp>

#include <deque>

using namespace pathmerge;
using nlohmann::json;

namespace {

json minimal_doc() {
  return json::parse(R"({
    "bounds": {"min": [0, 0], "max": [10, 10]},
    "robot_bodies": [[[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]],
    "obstacles": [[[4, 4], [6, 4], [6, 6], [4, 6]]],
    "weights": {"w_trans": 1, "w_rot": 0},
    "query": {"start": [[1, 1, 0]], "goal": [[9, 9, 0]]}
  })");
}

std::string field_of(const json& doc) {
  try {
    load_scene(doc.dump());
  } catch (const SceneError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("load_scene examples") {
  const Scene s = load_scene(minimal_doc().dump());
  CHECK(s.obstacles.size() == 1);
  CHECK(s.eps_res == doctest::Approx(0.01 * std::sqrt(200.0)));
  CHECK(s.clearance_sample_step == s.eps_res);

  auto colliding = minimal_doc();
  colliding["query"]["start"] = json::parse("[[5, 5, 0]]");
  CHECK(field_of(colliding) == "query.start");

  auto two_vertices = minimal_doc();
  two_vertices["obstacles"][0] = json::parse("[[4, 4], [6, 4]]");
  CHECK(field_of(two_vertices) == "obstacles[0]");

  auto dof = minimal_doc();
  dof["query"]["goal"] = json::parse("[[9, 9, 0], [1, 9, 0]]");
  CHECK(field_of(dof) == "query.goal");

  auto missing = minimal_doc();
  missing.erase("weights");
  CHECK(field_of(missing) == "weights");

  CHECK_THROWS_AS(load_scene("{not json"), SceneError);
}

TEST_CASE("serialize and load round-trip every field") {
  for (const Scene& s : {load_scene(minimal_doc().dump()), make_grid_scene(), make_maze_scene(), make_grid_scene(2, 3, 2.0)}) {
    const Scene t = load_scene(serialize_scene(s));
    CHECK(serialize_scene(t) == serialize_scene(s));
    CHECK(scene_hash(t) == scene_hash(s));
    CHECK(t.bounds.lo == s.bounds.lo);
    CHECK(t.bounds.hi == s.bounds.hi);
    CHECK(t.weights == s.weights);
    CHECK(t.start == s.start);
    CHECK(t.goal == s.goal);
    CHECK(t.eps_res == s.eps_res);
    CHECK(t.clearance_sample_step == s.clearance_sample_step);
    CHECK(t.translation_only == s.translation_only);
    REQUIRE(t.obstacles.size() == s.obstacles.size());
    for (std::size_t i = 0; i < s.obstacles.size(); ++i) CHECK(t.obstacles[i].vertices() == s.obstacles[i].vertices());
  }
  CHECK(scene_hash(make_grid_scene()).size() == 64);
  CHECK(scene_hash(make_grid_scene()) != scene_hash(make_maze_scene()));
}

TEST_CASE("grid scene structure") {
  const Scene s = make_grid_scene(4, 4, 3.0);
  CHECK(s.weights.w_trans == 1.0);
  CHECK(s.weights.w_rot == 0.00005);
  CHECK_FALSE(s.translation_only);
  const auto& body = s.robot_bodies[0].bounds();
  const double len = body.hi.x() - body.lo.x(), wid = body.hi.y() - body.lo.y();
  CHECK(len / wid >= 5.0);

  const auto layout = grid_layout(4, 4, 3.0);
  for (std::size_t r = 0; r + 1 < layout.gaps.size(); ++r) {
    for (const auto& [a0, a1] : layout.gaps[r]) {
      for (const auto& [b0, b1] : layout.gaps[r + 1]) CHECK((a1 < b0 || b1 < a0));
    }
  }
  // Start above the top row, goal below the bottom row.
  CHECK(s.start.poses[0].y > layout.row_y.front());
  CHECK(s.goal.poses[0].y < layout.row_y.back());

  // The rod cannot cross a passage at its start orientation; turned upright it can.
  CHECK(len > layout.passage_width);
  for (std::size_t r = 0; r < layout.gaps.size(); ++r) {
    const auto [lo, hi] = layout.gaps[r][1];
    const double x = 0.5 * (lo + hi);
    CHECK_FALSE(is_free(s, Config{Pose2(x, layout.row_y[r], s.start.poses[0].theta)}));
    CHECK(is_free(s, Config{Pose2(x, layout.row_y[r], 0.5 * kPi)}));
  }

  const Scene one = make_grid_scene(1, 4, 3.0);
  CHECK(grid_layout(1, 4, 3.0).row_y.size() == 1);
  CHECK(load_scene(serialize_scene(one)).obstacles.size() == 5);

  CHECK_THROWS_AS(make_grid_scene(0, 4, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid_scene(4, 0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid_scene(4, 4, 40.0), std::invalid_argument);
}

TEST_CASE("maze scene topology via fine-grid search") {
  const Scene s = make_maze_scene();
  CHECK(is_free(s, s.start));
  CHECK(is_free(s, s.goal));
  CHECK(s.translation_only);
  CHECK(s.weights.w_rot == 0.0);

  constexpr int N = 200;
  const double w = (s.bounds.hi.x() - s.bounds.lo.x()) / N;
  const double h = (s.bounds.hi.y() - s.bounds.lo.y()) / N;
  auto centre = [&](int i, int j) {
    return Config{Pose2(s.bounds.lo.x() + (i + 0.5) * w, s.bounds.lo.y() + (j + 0.5) * h, 0.0)};
  };
  std::vector<char> free_cell(N * N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) free_cell[i * N + j] = is_free(s, centre(i, j));
  }
  auto cell_of = [&](const Config& c) {
    const int i = static_cast<int>((c.poses[0].x - s.bounds.lo.x()) / w);
    const int j = static_cast<int>((c.poses[0].y - s.bounds.lo.y()) / h);
    return i * N + j;
  };
  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  auto bfs = [&](std::vector<int> seeds) {
    std::vector<int> dist(N * N, -1);
    std::deque<int> q;
    for (int c : seeds) {
      dist[c] = 0;
      q.push_back(c);
    }
    while (!q.empty()) {
      const int c = q.front();
      q.pop_front();
      const int i = c / N, j = c % N;
      for (auto& d : dirs) {
        const int a = i + d[0], b = j + d[1];
        if (a < 0 || b < 0 || a >= N || b >= N) continue;
        const int n = a * N + b;
        if (!free_cell[n] || dist[n] >= 0) continue;
        dist[n] = dist[c] + 1;
        q.push_back(n);
      }
    }
    return dist;
  };
  const int start = cell_of(s.start), goal = cell_of(s.goal);
  REQUIRE(free_cell[start]);
  REQUIRE(free_cell[goal]);
  const auto from_start = bfs({start});
  REQUIRE(from_start[goal] > 0);

  // Euler characteristic of the reachable region: 1 means connected with no
  // holes, so every start-goal path lies in a single homotopy class.
  auto reach = [&](int i, int j) { return i >= 0 && j >= 0 && i < N && j < N && from_start[i * N + j] >= 0; };
  long v = 0, e = 0, f = 0;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (!reach(i, j)) continue;
      ++v;
      e += reach(i + 1, j) + reach(i, j + 1);
      f += reach(i + 1, j) && reach(i, j + 1) && reach(i + 1, j + 1);
    }
  }
  CHECK(v - e + f == 1);

  // Dead ends: BFS local maxima far from the start-goal corridor.
  std::vector<int> corridor{goal};
  while (corridor.back() != start) {
    const int c = corridor.back(), i = c / N, j = c % N;
    for (auto& d : dirs) {
      const int a = i + d[0], b = j + d[1];
      if (reach(a, b) && from_start[a * N + b] == from_start[c] - 1) {
        corridor.push_back(a * N + b);
        break;
      }
    }
  }
  const auto from_corridor = bfs(corridor);
  const int corridor_cells = static_cast<int>(1.0 / w);  // one maze cell
  int dead_ends = 0;
  for (int c = 0; c < N * N; ++c) {
    if (from_start[c] < 0 || from_corridor[c] < corridor_cells) continue;
    const int i = c / N, j = c % N;
    bool frontier_ends = true;
    for (auto& d : dirs) {
      if (reach(i + d[0], j + d[1]) && from_start[(i + d[0]) * N + j + d[1]] > from_start[c]) frontier_ends = false;
    }
    dead_ends += frontier_ends;
  }
  CHECK(dead_ends >= 3);
}

TEST_CASE("generated scenes pass load validation") {
  for (int rows = 1; rows <= 5; ++rows) {
    for (int passages = 1; passages <= 5; ++passages) {
      const Scene s = make_grid_scene(rows, passages, 3.0);
      CHECK_NOTHROW(load_scene(serialize_scene(s)));
    }
  }
  CHECK_NOTHROW(load_scene(serialize_scene(make_maze_scene())));
}
