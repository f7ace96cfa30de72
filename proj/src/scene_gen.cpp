#include "pathmerge/scene.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace pathmerge {

namespace {

// Grid scene dimensions, in workspace units.
constexpr double kPassagePitch = 6.0;
constexpr double kPassageWidth = 0.5;
constexpr double kRowThickness = 0.4;
constexpr double kBandHeight = 2.5;
constexpr double kMargin = 2.0;
constexpr double kRodLength = 1.0;
constexpr double kRodWidth = 0.12;

// Maze: cells x cells corridors on a unit block lattice.
constexpr int kMazeCells = 6;
constexpr double kMazeRobotSide = 0.4;
constexpr unsigned kMazeSeed = 20090607u;

}  // namespace

GridLayout grid_layout(int rows, int passages_per_row, double shift) {
  if (rows < 1) throw std::invalid_argument("grid scene needs rows >= 1");
  if (passages_per_row < 1) throw std::invalid_argument("grid scene needs passages_per_row >= 1");
  if (!std::isfinite(shift)) throw std::invalid_argument("grid shift must be finite");

  GridLayout layout;
  layout.width = kPassagePitch * passages_per_row;
  layout.passage_width = kPassageWidth;
  const double height = 2 * kMargin + rows * kRowThickness + (rows - 1) * kBandHeight;
  for (int r = 0; r < rows; ++r) {
    layout.row_y.push_back(height - kMargin - 0.5 * kRowThickness - r * (kRowThickness + kBandHeight));
    // Odd and even rows are displaced in opposite directions, `shift` apart.
    const double offset = (r % 2 == 0 ? -0.5 : 0.5) * shift;
    std::vector<std::pair<double, double>> gaps;
    for (int k = 0; k < passages_per_row; ++k) {
      const double c = (k + 0.5) * kPassagePitch + offset;
      gaps.emplace_back(c - 0.5 * kPassageWidth, c + 0.5 * kPassageWidth);
    }
    if (gaps.front().first <= 0.0 || gaps.back().second >= layout.width) {
      throw std::invalid_argument("grid shift moves a passage out of the workspace");
    }
    layout.gaps.push_back(std::move(gaps));
  }
  return layout;
}

Scene make_grid_scene(int rows, int passages_per_row, double shift) {
  const GridLayout layout = grid_layout(rows, passages_per_row, shift);
  const double height = 2 * kMargin + rows * kRowThickness + (rows - 1) * kBandHeight;

  Scene scene;
  scene.bounds = {{0.0, 0.0}, {layout.width, height}};
  scene.robot_bodies.push_back(
      Polygon::rectangle(-0.5 * kRodLength, -0.5 * kRodWidth, 0.5 * kRodLength, 0.5 * kRodWidth));
  for (int r = 0; r < rows; ++r) {
    const double y0 = layout.row_y[r] - 0.5 * kRowThickness;
    const double y1 = layout.row_y[r] + 0.5 * kRowThickness;
    double x = 0.0;
    for (const auto& [lo, hi] : layout.gaps[r]) {
      scene.obstacles.push_back(Polygon::rectangle(x, y0, lo, y1));
      x = hi;
    }
    scene.obstacles.push_back(Polygon::rectangle(x, y0, layout.width, y1));
  }
  scene.weights = {1.0, 0.00005};
  scene.start = Config{Pose2(0.5 * layout.width, height - 0.5 * kMargin, 0.0)};
  scene.goal = Config{Pose2(0.5 * layout.width, 0.5 * kMargin, 0.0)};
  scene.eps_res = 0.01 * scene.diameter();
  scene.clearance_sample_step = scene.eps_res;
  validate_scene(scene);
  return scene;
}

Scene make_maze_scene() {
  constexpr int n = kMazeCells;
  constexpr int side = 2 * n + 1;
  std::vector<std::vector<bool>> wall(side, std::vector<bool>(side, true));

  // Iterative depth-first carving; raw engine output keeps it portable.
  std::mt19937 rng(kMazeSeed);
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  std::vector<std::pair<int, int>> stack{{0, 0}};
  seen[0][0] = true;
  wall[1][1] = false;
  const int dr[4] = {-1, 1, 0, 0};
  const int dc[4] = {0, 0, -1, 1};
  while (!stack.empty()) {
    const auto [r, c] = stack.back();
    int options[4];
    int count = 0;
    for (int d = 0; d < 4; ++d) {
      const int nr = r + dr[d];
      const int nc = c + dc[d];
      if (nr >= 0 && nr < n && nc >= 0 && nc < n && !seen[nr][nc]) options[count++] = d;
    }
    if (count == 0) {
      stack.pop_back();
      continue;
    }
    const int d = options[rng() % static_cast<unsigned>(count)];
    const int nr = r + dr[d];
    const int nc = c + dc[d];
    seen[nr][nc] = true;
    wall[2 * r + 1 + dr[d]][2 * c + 1 + dc[d]] = false;
    wall[2 * nr + 1][2 * nc + 1] = false;
    stack.emplace_back(nr, nc);
  }

  // Block (row, col) occupies x in [col, col+1], y in [side-row-1, side-row].
  Scene scene;
  scene.bounds = {{0.0, 0.0}, {double(side), double(side)}};
  std::vector<std::vector<bool>> used(side, std::vector<bool>(side, false));
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side;) {
      if (!wall[r][c]) {
        ++c;
        continue;
      }
      int e = c;
      while (e + 1 < side && wall[r][e + 1]) ++e;
      if (e > c) {
        scene.obstacles.push_back(Polygon::rectangle(c, side - r - 1, e + 1, side - r));
        for (int k = c; k <= e; ++k) used[r][k] = true;
      }
      c = e + 1;
    }
  }
  for (int c = 0; c < side; ++c) {
    for (int r = 0; r < side;) {
      if (!wall[r][c] || used[r][c]) {
        ++r;
        continue;
      }
      int e = r;
      while (e + 1 < side && wall[e + 1][c] && !used[e + 1][c]) ++e;
      scene.obstacles.push_back(Polygon::rectangle(c, side - e - 1, c + 1, side - r));
      r = e + 1;
    }
  }

  const double h = 0.5 * kMazeRobotSide;
  scene.robot_bodies.push_back(Polygon::rectangle(-h, -h, h, h));
  scene.weights = {1.0, 0.0};
  scene.translation_only = true;
  scene.start = Config{Pose2(1.5, side - 1.5, 0.0)};
  scene.goal = Config{Pose2(side - 1.5, 1.5, 0.0)};
  scene.eps_res = 0.01 * scene.diameter();
  scene.clearance_sample_step = scene.eps_res;
  validate_scene(scene);
  return scene;
}

}  // namespace pathmerge
