#include "oracles.hpp"

#include "helpers.hpp"
#include "pathmerge/config.hpp"
#include "pathmerge/cspace.hpp"

#include <doctest.h>

#include <random>

using namespace pathmerge;

TEST_CASE("config_distance examples") {
  const MetricWeights w{1.0, 1.0};
  const Config a{Pose2(1, 2, 0.3)};
  CHECK(config_distance(a, a, w) == 0.0);
  CHECK(config_distance(Config{Pose2(0, 0, 0)}, Config{Pose2(3, 4, 0)}, {1.0, 0.0}) == 5.0);
  for (double w_trans : {0.5, 1.0, 7.0}) {
    const double d = config_distance(Config{Pose2(1, 1, 0.1)}, Config{Pose2(1, 1, kTwoPi - 0.1)}, {w_trans, 1.0});
    CHECK(d == doctest::Approx(0.2).epsilon(1e-12));
  }
  CHECK(config_distance(Config{Pose2(0, 0, 0)}, Config{Pose2(0, 0, 0.5)}, {1.0, 4.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(config_distance(a, Config{Pose2(0, 0, 0), Pose2(0, 0, 0)}, w), std::invalid_argument);
}

TEST_CASE("half-turn ties resolve toward the positive direction") {
  CHECK(angle_delta(0.0, kPi) == doctest::Approx(kPi));
  CHECK(angle_delta(kPi, 0.0) == doctest::Approx(kPi));
  CHECK(angle_delta(0.1, kTwoPi - 0.1) == doctest::Approx(-0.2));
}

TEST_CASE("interpolate examples") {
  const Config a{Pose2(0, 0, 0)}, b{Pose2(2, 0, 0)};
  CHECK(interpolate(a, b, 0.0) == a);
  CHECK(interpolate(a, b, 1.0) == b);
  CHECK(configs_close(interpolate(a, b, 0.5), Config{Pose2(1, 0, 0)}));
  const auto mid = interpolate(Config{Pose2(0, 0, 0.1)}, Config{Pose2(0, 0, kTwoPi - 0.1)}, 0.5);
  CHECK(configs_close(mid, Config{Pose2(0, 0, 0)}));
  CHECK_THROWS_AS(interpolate(a, b, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(interpolate(a, b, -0.1), std::invalid_argument);
}

TEST_CASE("metric properties on random triples") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5), th(0, kTwoPi);
  const MetricWeights w{1.0, 0.3};
  for (int trial = 0; trial < 500; ++trial) {
    const Config a{Pose2(u(rng), u(rng), th(rng)), Pose2(u(rng), u(rng), th(rng))};
    const Config b{Pose2(u(rng), u(rng), th(rng)), Pose2(u(rng), u(rng), th(rng))};
    const Config c{Pose2(u(rng), u(rng), th(rng)), Pose2(u(rng), u(rng), th(rng))};
    CHECK(config_distance(a, b, w) == config_distance(b, a, w));
    CHECK(config_distance(a, a, w) == 0.0);
    CHECK(config_distance(a, c, w) <= config_distance(a, b, w) + config_distance(b, c, w) + 1e-12);
  }
}

TEST_CASE("interpolation splits distance additively") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-5, 5), th(0, kTwoPi), dth(-1.5, 1.5), t(0, 1);
  const MetricWeights w{1.0, 0.7};
  for (int trial = 0; trial < 500; ++trial) {
    const double t0 = th(rng);
    const Config a{Pose2(u(rng), u(rng), t0)};
    const Config b{Pose2(u(rng), u(rng), t0 + dth(rng))};
    const double tt = t(rng);
    const Config m = interpolate(a, b, tt);
    CHECK(config_distance(a, m, w) + config_distance(m, b, w) == doctest::Approx(config_distance(a, b, w)).epsilon(1e-9));
  }
}

TEST_CASE("is_free examples") {
  const auto s = testutil::box_scene();
  CHECK(is_free(s, Config{Pose2(4, 5, 0)}));
  CHECK_FALSE(is_free(s, Config{Pose2(10, 5, 0)}));
  CHECK_FALSE(is_free(s, Config{Pose2(-3, 5, 0)}));
  CHECK_FALSE(is_free(s, Config{Pose2(19.8, 5, 0)}));  // body pokes out of bounds
  CHECK_FALSE(is_free(s, Config{Pose2(8.5, 5, 0)}));   // touching counts as collision
}

TEST_CASE("local_plan examples") {
  const auto s = testutil::box_scene();
  const Config free_a{Pose2(4, 5, 0)};
  CHECK(local_plan(s, free_a, free_a));
  CHECK_FALSE(local_plan(s, Config{Pose2(10, 5, 0)}, free_a));
  CHECK_FALSE(local_plan(s, free_a, Config{Pose2(16, 5, 0)}));  // crosses the block
  CHECK(local_plan(s, Config{Pose2(4, 1, 0)}, Config{Pose2(16, 1, 0)}));
}

TEST_CASE("local_plan agrees with a ten-times denser sampling oracle in the maze") {
  const auto s = make_maze_scene();
  Rng rng(42);
  std::uniform_real_distribution<double> step(-1.5, 1.5);
  int blocked = 0, clear = 0;
  while (blocked + clear < 100) {
    const Config a = sample_uniform(s, rng);
    if (!is_free(s, a)) continue;
    Config b = a;
    b.poses[0] = Pose2(a.poses[0].x + step(rng), a.poses[0].y + step(rng), a.poses[0].theta);
    const bool fast = local_plan(s, a, b);
    const bool dense = oracle::dense_segment_free(s, a, b, s.eps_res / 10.0);
    CHECK(fast == dense);
    (dense ? clear : blocked)++;
  }
  CHECK(blocked > 10);
  CHECK(clear > 10);
}

TEST_CASE("local_plan is symmetric and monotone in resolution") {
  const auto s = make_grid_scene();
  Rng rng(8);
  std::uniform_real_distribution<double> step(-2.0, 2.0), turn(-1.0, 1.0);
  int checked = 0;
  while (checked < 200) {
    const Config a = sample_uniform(s, rng);
    if (!is_free(s, a)) continue;
    const auto& p = a.poses[0];
    const Config b{Pose2(p.x + step(rng), p.y + step(rng), p.theta + turn(rng))};
    ++checked;
    CHECK(local_plan(s, a, b) == local_plan(s, b, a));
    if (local_plan(s, a, b, s.eps_res)) {
      CHECK(local_plan(s, a, b, 2.0 * s.eps_res));
      CHECK(local_plan(s, a, b, 7.3 * s.eps_res));
    }
  }
}

TEST_CASE("sample_uniform determinism and moments") {
  auto s = testutil::box_scene();
  s.translation_only = false;
  Rng r1(99), r2(99);
  CHECK(sample_uniform(s, r1) == sample_uniform(s, r2));

  Rng rng(5);
  const int n = 10000;
  double sx = 0, sy = 0, st = 0;
  for (int i = 0; i < n; ++i) {
    const auto c = sample_uniform(s, rng);
    sx += c.poses[0].x;
    sy += c.poses[0].y;
    st += c.poses[0].theta;
  }
  auto within = [&](double sum, double lo, double hi) {
    const double sigma = (hi - lo) / std::sqrt(12.0) / std::sqrt(double(n));
    return std::abs(sum / n - 0.5 * (lo + hi)) <= 5 * sigma;
  };
  CHECK(within(sx, 0, 20));
  CHECK(within(sy, 0, 10));
  CHECK(within(st, 0, kTwoPi));

  Scene point = s;
  point.bounds = {{3.0, 4.0}, {3.0, 4.0}};
  for (int i = 0; i < 10; ++i) {
    const auto c = sample_uniform(point, rng);
    CHECK(c.poses[0].x == 3.0);
    CHECK(c.poses[0].y == 4.0);
  }
}
