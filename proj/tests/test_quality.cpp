#include "helpers.hpp"
#include "pathmerge/cspace.hpp"
#include "pathmerge/planners.hpp"
#include "pathmerge/quality.hpp"

#include <doctest.h>

#include <random>

using namespace pathmerge;

namespace {

Path pts(std::initializer_list<std::pair<double, double>> xy) {
  Path p;
  for (auto [x, y] : xy) p.nodes.push_back(Config{Pose2(x, y, 0)});
  return p;
}

// One long block under the corridor y in [3.5, 10].
Scene ledge_scene() {
  Scene s = testutil::empty_scene();
  s.obstacles = {Polygon::rectangle(0.0, 0.0, 20.0, 3.0)};
  s.start = Config{Pose2(1, 4.5, 0)};
  s.goal = Config{Pose2(9, 8, 0)};
  validate_scene(s);
  return s;
}

Scene slit_scene() {
  Scene s = testutil::empty_scene();
  s.obstacles = {Polygon::rectangle(0.0, 4.0, 9.2, 6.0), Polygon::rectangle(10.8, 4.0, 20.0, 6.0)};
  s.start = Config{Pose2(10, 1, 0)};
  s.goal = Config{Pose2(10, 9, 0)};
  validate_scene(s);
  return s;
}

}  // namespace

TEST_CASE("measure names") {
  for (const char* n : {"length", "kinv:3", "kinv:0.25", "kinv:0", "bottleneck", "avg-clearance"}) {
    CHECK(QualityMeasure::parse(n).name() == n);
  }
  for (const char* n : {"len", "kinv:", "kinv:-1", "kinv:x", "kinv:3x", "Bottleneck"}) {
    CHECK_THROWS_AS(QualityMeasure::parse(n), std::invalid_argument);
  }
  CHECK(QualityMeasure::bottleneck().higher_is_better());
  CHECK_FALSE(QualityMeasure::k_inverse(2).higher_is_better());
}

TEST_CASE("path_length examples") {
  CHECK(path_length(pts({{0, 0}, {3, 4}}), {1.0, 0.0}) == 5.0);
  CHECK(path_length(pts({{2, 2}, {2, 2}}), {1.0, 0.0}) == 0.0);
}

TEST_CASE("integrated k-inverse clearance") {
  const Scene s = ledge_scene();
  const Path flat = pts({{1, 4.5}, {9, 4.5}});  // clearance 1 throughout
  for (double k : {0.0, 0.5, 3.0}) {
    CHECK(integrated_k_inverse_clearance(s, flat, k) == doctest::Approx(8.0).epsilon(1e-6));
  }
  const Path low = pts({{1, 4.0}, {9, 4.0}});  // clearance 0.5
  CHECK(integrated_k_inverse_clearance(s, low, 3.0) == doctest::Approx(8.0 * 8.0).epsilon(1e-6));

  // Flat run then a climb away from the ledge: 8 + integral_1^4.5 u^-3 du.
  const Path two = pts({{1, 4.5}, {9, 4.5}, {9, 8}});
  const double analytic = 8.0 + 0.5 * (1.0 - 1.0 / (4.5 * 4.5));
  const double coarse = integrated_k_inverse_clearance(s, two, 3.0);
  const double fine = integrated_k_inverse_clearance(s, two, 3.0, SamplingResolution::of(s).refined(10));
  CHECK(coarse == doctest::Approx(analytic).epsilon(0.01));
  CHECK(coarse == doctest::Approx(fine).epsilon(0.01));
}

TEST_CASE("k = 0 gives exactly the path length") {
  const Scene s = make_maze_scene();
  PrmParams p;
  p.n_samples = 300;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    p.seed = seed;
    const auto r = prm_plan(s, p);
    if (!r.ok()) continue;
    CHECK(integrated_k_inverse_clearance(s, *r.path, 0.0) == path_length(*r.path, s.weights));
  }
}

TEST_CASE("k-inverse weight is monotone in each sample clearance") {
  const Scene s = ledge_scene();
  const auto g = compute_edge_geometry(s, Config{Pose2(1, 4.5, 0)}, Config{Pose2(9, 8, 0)}, SamplingResolution::of(s));
  REQUIRE(g.clearance_samples.size() >= 5);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> bump(0.0, 2.0);
  for (std::size_t i = 0; i < g.clearance_samples.size(); ++i) {
    auto h = g;
    h.clearance_samples[i].clearance += bump(rng);
    for (double k : {0.5, 1.0, 3.0}) CHECK(h.k_inverse_integral(k, 1e-4) <= g.k_inverse_integral(k, 1e-4));
  }
}

TEST_CASE("bottleneck clearance") {
  const Scene slit = slit_scene();
  // Gap half-width 0.8 minus robot half-width 0.5.
  CHECK(bottleneck_clearance(slit, pts({{10, 1}, {10, 9}})) == doctest::Approx(0.3).epsilon(1e-9));

  const Scene s = testutil::box_scene();
  const Path open = pts({{2, 1}, {7, 9}, {18, 9}});
  const double coarse = bottleneck_clearance(s, open);
  CHECK(coarse == doctest::Approx(bottleneck_clearance(s, open, SamplingResolution::of(s).refined(10))).epsilon(0.01));

  const Path touching = pts({{4, 5}, {8.5, 5}, {8.5, 9}});
  CHECK(bottleneck_clearance(s, touching) == 0.0);

  const Scene maze = make_maze_scene();
  PrmParams p;
  p.n_samples = 300;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    p.seed = seed;
    const auto r = prm_plan(maze, p);
    if (!r.ok()) continue;
    double node_min = 1e300;
    for (const auto& c : r.path->nodes) node_min = std::min(node_min, scene_clearance(maze, c));
    CHECK(bottleneck_clearance(maze, *r.path) <= node_min);
  }
}

TEST_CASE("average clearance") {
  const Scene s = ledge_scene();
  CHECK(average_clearance(s, pts({{1, 4.5}, {9, 4.5}})) == doctest::Approx(1.0).epsilon(1e-9));

  const Path a = pts({{1, 4.5}, {9, 4.5}});
  const Path b = pts({{9, 4.5}, {9, 8}});
  const Path ab = pts({{1, 4.5}, {9, 4.5}, {9, 8}});
  const double expect = (8.0 * average_clearance(s, a) + 3.5 * average_clearance(s, b)) / 11.5;
  CHECK(average_clearance(s, ab) == doctest::Approx(expect).epsilon(1e-12));
  // Clearance climbs linearly from 1 to 4.5 on the second leg.
  CHECK(average_clearance(s, b) == doctest::Approx(2.75).epsilon(1e-3));

  const Path halves = pts({{1, 4.5}, {9, 4.5}, {1, 4.5}});
  CHECK(average_clearance(s, halves) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("refinement stability on maze paths") {
  const Scene s = make_maze_scene();
  PrmParams p;
  p.n_samples = 300;
  const auto fine = SamplingResolution::of(s).refined(10);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    p.seed = seed;
    const auto r = prm_plan(s, p);
    if (!r.ok()) continue;
    ++checked;
    for (const char* m : {"kinv:3", "kinv:0.25", "bottleneck", "avg-clearance"}) {
      const auto q = QualityMeasure::parse(m);
      CHECK(evaluate(s, *r.path, q) == doctest::Approx(evaluate(s, *r.path, q, fine)).epsilon(0.01));
    }
  }
  CHECK(checked >= 4);
}
