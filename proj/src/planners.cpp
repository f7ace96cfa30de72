#include "pathmerge/planners.hpp"

#include "pathmerge/cspace.hpp"
#include "pathmerge/quality.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace pathmerge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class DisjointSets {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct Adjacent {
  std::size_t to;
  double length;
};

// Roadmap distance from `from` to `to`, giving up (returning +inf) once every
// remaining label exceeds `cutoff`.
double roadmap_distance(const std::vector<std::vector<Adjacent>>& adj, std::size_t from, std::size_t to,
                        double cutoff) {
  std::vector<double> dist(adj.size(), kInf);
  using Label = std::pair<double, std::size_t>;
  std::priority_queue<Label, std::vector<Label>, std::greater<>> queue;
  dist[from] = 0.0;
  queue.emplace(0.0, from);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (d > cutoff) return kInf;
    if (u == to) return d;
    for (const auto& a : adj[u]) {
      if (d + a.length < dist[a.to]) {
        dist[a.to] = d + a.length;
        queue.emplace(dist[a.to], a.to);
      }
    }
  }
  return kInf;
}

std::optional<std::vector<std::size_t>> shortest_route(const std::vector<std::vector<Adjacent>>& adj,
                                                       std::size_t from, std::size_t to) {
  std::vector<double> dist(adj.size(), kInf);
  std::vector<std::size_t> pred(adj.size(), kNone);
  using Label = std::pair<double, std::size_t>;
  std::priority_queue<Label, std::vector<Label>, std::greater<>> queue;
  dist[from] = 0.0;
  queue.emplace(0.0, from);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (u == to) break;
    for (const auto& a : adj[u]) {
      if (d + a.length < dist[a.to]) {
        dist[a.to] = d + a.length;
        pred[a.to] = u;
        queue.emplace(dist[a.to], a.to);
      }
    }
  }
  if (dist[to] == kInf) return std::nullopt;
  std::vector<std::size_t> route{to};
  while (route.back() != from) route.push_back(pred[route.back()]);
  std::reverse(route.begin(), route.end());
  return route;
}

Path two_node_path(const Config& a, const Config& b) { return Path{{a, b}}; }

}  // namespace

std::string cycle_mode_name(CycleMode mode) {
  switch (mode) {
    case CycleMode::NoCycles: return "none";
    case CycleMode::AllCycles: return "all";
    case CycleMode::UsefulCycles: return "useful";
  }
  return {};
}

CycleMode parse_cycle_mode(const std::string& name) {
  if (name == "none") return CycleMode::NoCycles;
  if (name == "all") return CycleMode::AllCycles;
  if (name == "useful") return CycleMode::UsefulCycles;
  throw std::invalid_argument("unknown cycle mode '" + name + "' (expected none, all, useful)");
}

std::size_t Roadmap::component_count() const {
  DisjointSets sets;
  for (std::size_t i = 0; i < nodes.size(); ++i) sets.add();
  std::size_t count = nodes.size();
  for (const auto& e : edges) {
    if (sets.find(e.u) != sets.find(e.v)) {
      sets.unite(e.u, e.v);
      --count;
    }
  }
  return count;
}

PrmResult prm_plan(const Scene& scene, const PrmParams& params) {
  if (params.k_neighbors < 1) throw std::invalid_argument("prm: k_neighbors must be >= 1");
  if (params.cycle_mode == CycleMode::UsefulCycles && !(params.gamma > 1.0)) {
    throw std::invalid_argument("prm: gamma must be > 1");
  }
  const auto t0 = Clock::now();
  PrmResult result;
  Roadmap& map = result.roadmap;
  Rng rng(params.seed);
  DisjointSets sets;
  std::vector<std::vector<Adjacent>> adj;

  auto budget_left = [&] {
    if (seconds_since(t0) >= params.time_budget_s) return false;
    if (params.max_local_planner_calls > 0 && result.local_planner_calls >= params.max_local_planner_calls) {
      return false;
    }
    return true;
  };

  auto add_node = [&](const Config& c) {
    const std::size_t id = map.nodes.size();
    std::vector<std::pair<double, std::size_t>> near;
    near.reserve(id);
    for (std::size_t i = 0; i < id; ++i) near.emplace_back(config_distance(c, map.nodes[i], scene.weights), i);
    const std::size_t k = std::min(params.k_neighbors, near.size());
    std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(k), near.end());
    map.nodes.push_back(c);
    sets.add();
    adj.emplace_back();
    for (std::size_t n = 0; n < k; ++n) {
      const auto [len, other] = near[n];
      const bool joined = sets.find(id) == sets.find(other);
      if (joined) {
        if (params.cycle_mode == CycleMode::NoCycles) continue;
        if (params.cycle_mode == CycleMode::UsefulCycles &&
            roadmap_distance(adj, id, other, params.gamma * len) <= params.gamma * len) {
          continue;
        }
      }
      ++result.local_planner_calls;
      if (!local_plan(scene, c, map.nodes[other])) continue;
      map.edges.push_back({id, other, len});
      adj[id].push_back({other, len});
      adj[other].push_back({id, len});
      sets.unite(id, other);
    }
  };

  add_node(scene.start);
  add_node(scene.goal);
  if (configs_close(scene.start, scene.goal)) {
    result.path = two_node_path(scene.start, scene.goal);
    result.wall_time_s = seconds_since(t0);
    return result;
  }

  std::size_t added = 0;
  const std::size_t max_attempts = 1000 * std::max<std::size_t>(params.n_samples, 1);
  while (added < params.n_samples && result.iterations < max_attempts && budget_left()) {
    ++result.iterations;
    const Config c = sample_uniform(scene, rng);
    if (!is_free(scene, c)) continue;
    add_node(c);
    ++added;
  }

  if (auto route = shortest_route(adj, 0, 1)) {
    Path path;
    for (std::size_t id : *route) path.nodes.push_back(map.nodes[id]);
    result.path = std::move(path);
  } else {
    double nearest = kInf;
    for (std::size_t i = 0; i < map.nodes.size(); ++i) {
      if (sets.find(i) != sets.find(0)) continue;
      for (std::size_t j = 0; j < map.nodes.size(); ++j) {
        if (sets.find(j) != sets.find(1)) continue;
        nearest = std::min(nearest, config_distance(map.nodes[i], map.nodes[j], scene.weights));
      }
    }
    result.diagnostic = "start and goal not connected: " + std::to_string(map.component_count()) +
                        " components, nearest approach between start and goal components " +
                        std::to_string(nearest);
  }
  result.wall_time_s = seconds_since(t0);
  return result;
}

PlanResult rrt_plan(const Scene& scene, const RrtParams& params) {
  if (!(params.step > 0.0)) throw std::invalid_argument("rrt: step must be > 0");
  if (!(params.goal_bias >= 0.0 && params.goal_bias <= 1.0)) {
    throw std::invalid_argument("rrt: goal_bias must be in [0, 1]");
  }
  const auto t0 = Clock::now();
  PlanResult result;
  if (configs_close(scene.start, scene.goal)) {
    result.path = two_node_path(scene.start, scene.goal);
    return result;
  }
  Rng rng(params.seed);
  std::vector<Config> tree{scene.start};
  std::vector<std::size_t> parent{kNone};
  std::size_t goal_id = kNone;

  while (result.iterations < params.max_iters && goal_id == kNone) {
    ++result.iterations;
    const bool to_goal = std::generate_canonical<double, 53>(rng) < params.goal_bias;
    const Config target = to_goal ? scene.goal : sample_uniform(scene, rng);
    std::size_t near = 0;
    double best = kInf;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const double d = config_distance(tree[i], target, scene.weights);
      if (d < best) {
        best = d;
        near = i;
      }
    }
    if (best <= 0.0) continue;
    const Config next = best <= params.step ? target : interpolate(tree[near], target, params.step / best);
    ++result.local_planner_calls;
    if (!local_plan(scene, tree[near], next)) continue;
    tree.push_back(next);
    parent.push_back(near);
    const std::size_t id = tree.size() - 1;
    if (configs_close(next, scene.goal)) {
      goal_id = id;
    } else if (config_distance(next, scene.goal, scene.weights) <= params.step) {
      ++result.local_planner_calls;
      if (local_plan(scene, next, scene.goal)) {
        tree.push_back(scene.goal);
        parent.push_back(id);
        goal_id = tree.size() - 1;
      }
    }
  }

  if (goal_id != kNone) {
    std::vector<Config> chain;
    for (std::size_t id = goal_id; id != kNone; id = parent[id]) chain.push_back(tree[id]);
    std::reverse(chain.begin(), chain.end());
    chain.back() = scene.goal;
    result.path = Path{std::move(chain)};
  } else {
    result.diagnostic = "goal not reached after " + std::to_string(params.max_iters) + " iterations (" +
                        std::to_string(tree.size()) + " tree nodes)";
  }
  result.wall_time_s = seconds_since(t0);
  return result;
}

ShortcutResult shortcut(const Scene& scene, const Path& path, std::size_t iters, std::uint64_t seed) {
  ShortcutResult out{path, 0};
  Rng rng(seed);
  std::vector<Config>& nodes = out.path.nodes;
  double length = path_length(out.path, scene.weights);
  for (std::size_t it = 0; it < iters && nodes.size() >= 3; ++it) {
    const std::size_t n = nodes.size();
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 3)(rng);
    const std::size_t j = std::uniform_int_distribution<std::size_t>(i + 2, n - 1)(rng);
    ++out.local_planner_calls;
    if (!local_plan(scene, nodes[i], nodes[j])) continue;
    Path candidate = out.path;
    candidate.nodes.erase(candidate.nodes.begin() + static_cast<std::ptrdiff_t>(i + 1),
                          candidate.nodes.begin() + static_cast<std::ptrdiff_t>(j));
    const double shorter = path_length(candidate, scene.weights);
    if (shorter <= length) {
      out.path = std::move(candidate);
      length = shorter;
    }
  }
  return out;
}

}  // namespace pathmerge
