#include "pathmerge/hgraph.hpp"

#include "pathmerge/cspace.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>

namespace pathmerge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

using NodePair = std::pair<std::size_t, std::size_t>;

NodePair ordered(std::size_t a, std::size_t b) { return a < b ? NodePair{a, b} : NodePair{b, a}; }

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void validate_inputs(const Scene& scene, const std::vector<Path>& paths) {
  if (paths.empty()) throw std::invalid_argument("build_hgraph: no input paths");
  const Config& start = paths.front().front();
  const Config& goal = paths.front().back();
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const Path& p = paths[k];
    if (p.size() < 2) throw std::invalid_argument("build_hgraph: path " + std::to_string(k) + " has fewer than 2 nodes");
    for (const auto& c : p.nodes) {
      if (c.bodies() != scene.robot_bodies.size()) {
        throw std::invalid_argument("build_hgraph: path " + std::to_string(k) + " has the wrong dof");
      }
    }
    if (!configs_close(p.front(), start)) {
      throw std::invalid_argument("build_hgraph: path " + std::to_string(k) + " does not share the start");
    }
    if (!configs_close(p.back(), goal)) {
      throw std::invalid_argument("build_hgraph: path " + std::to_string(k) + " does not share the goal");
    }
  }
}

std::set<NodePair> existing_edges(const HGraph& graph) {
  std::set<NodePair> out;
  for (const auto& e : graph.edges) out.insert({e.u, e.v});
  return out;
}

std::vector<NodePair> edit_candidates(const Scene& scene, const HGraph& graph, const std::vector<Path>& paths,
                                      const EditDistance& edit) {
  std::set<NodePair> found;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    for (std::size_t l = k + 1; l < paths.size(); ++l) {
      MatchParams params = edit.match;
      if (edit.auto_gap_ext) {
        params.gap_ext = edit.gap_ext_scale * default_gap_ext(paths[k], paths[l], params.delta_scale, scene.weights);
      }
      const auto result = match_paths(paths[k], paths[l], params, scene.weights);
      for (const auto& [i, j] : bridge_candidates(result.alignment)) {
        const std::size_t u = hgraph_node_id(graph, paths, k, i);
        const std::size_t v = hgraph_node_id(graph, paths, l, j);
        if (u != v) found.insert(ordered(u, v));
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<NodePair> all_pairs(const HGraph& graph) {
  std::vector<NodePair> out;
  for (std::size_t u = 0; u < graph.nodes.size(); ++u) {
    for (std::size_t v = u + 1; v < graph.nodes.size(); ++v) out.emplace_back(u, v);
  }
  return out;
}

std::vector<NodePair> within(const Scene& scene, const HGraph& graph, std::vector<NodePair> pairs, double radius) {
  std::erase_if(pairs, [&](const NodePair& p) {
    return config_distance(graph.nodes[p.first].config, graph.nodes[p.second].config, scene.weights) > radius;
  });
  return pairs;
}

struct CheckedPair {
  bool ok = false;
  EdgeGeometry geometry;
};

std::vector<CheckedPair> check_pairs(const Scene& scene, const HGraph& graph, const std::vector<NodePair>& pairs,
                                     unsigned threads) {
  std::vector<CheckedPair> out(pairs.size());
  const auto res = SamplingResolution::of(scene);
  auto work = [&](std::size_t idx) {
    const Config& a = graph.nodes[pairs[idx].first].config;
    const Config& b = graph.nodes[pairs[idx].second].config;
    if (local_plan(scene, a, b)) {
      out[idx].ok = true;
      out[idx].geometry = compute_edge_geometry(scene, a, b, res);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || pairs.size() < 2) {
    for (std::size_t i = 0; i < pairs.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < pairs.size(); i = next++) work(i);
    });
  }
  pool.clear();  // joins
  return out;
}

const HGraphEdge& edge_between(const HGraph& graph, std::size_t a, std::size_t b) {
  for (const auto& [nb, e] : graph.adjacency.at(a)) {
    if (nb == b) return graph.edges[e];
  }
  throw std::invalid_argument("route uses a missing edge " + std::to_string(a) + "-" + std::to_string(b));
}

std::vector<std::size_t> unwind(const std::vector<std::size_t>& pred, std::size_t goal) {
  std::vector<std::size_t> route{goal};
  while (route.back() != HGraph::kStart) {
    const std::size_t p = pred[route.back()];
    if (p == kNoNode) throw std::runtime_error("goal is not connected to start in the H-Graph");
    route.push_back(p);
  }
  std::reverse(route.begin(), route.end());
  return route;
}

std::vector<std::size_t> additive_route(const HGraph& graph, const QualityMeasure& measure) {
  const std::size_t n = graph.nodes.size();
  std::vector<double> weight(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    weight[e] = edge_weight(graph.edges[e].geometry, measure, graph.clearance_floor);
  }
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> hops(n, kNoNode);
  std::vector<std::size_t> pred(n, kNoNode);
  std::vector<bool> done(n, false);
  using Label = std::tuple<double, std::size_t, std::size_t>;
  std::priority_queue<Label, std::vector<Label>, std::greater<>> queue;
  dist[HGraph::kStart] = 0.0;
  hops[HGraph::kStart] = 0;
  queue.emplace(0.0, 0, HGraph::kStart);
  while (!queue.empty()) {
    const auto [d, h, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = true;
    for (const auto& [v, e] : graph.adjacency[u]) {
      if (done[v]) continue;
      const double nd = dist[u] + weight[e];
      const std::size_t nh = hops[u] + 1;
      const bool better = nd < dist[v] || (nd == dist[v] && (nh < hops[v] || (nh == hops[v] && u < pred[v])));
      if (better) {
        dist[v] = nd;
        hops[v] = nh;
        pred[v] = u;
        queue.emplace(nd, nh, v);
      }
    }
  }
  return unwind(pred, HGraph::kGoal);
}

std::vector<std::size_t> bottleneck_route(const HGraph& graph) {
  const std::size_t n = graph.nodes.size();
  std::vector<double> width(n, -kInf);
  std::vector<bool> done(n, false);
  std::priority_queue<std::pair<double, std::size_t>> queue;
  width[HGraph::kStart] = kInf;
  queue.emplace(kInf, HGraph::kStart);
  while (!queue.empty()) {
    const auto [w, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = true;
    for (const auto& [v, e] : graph.adjacency[u]) {
      const double nw = std::min(width[u], graph.edges[e].geometry.min_clearance);
      if (!done[v] && nw > width[v]) {
        width[v] = nw;
        queue.emplace(nw, v);
      }
    }
  }
  const double best = width[HGraph::kGoal];
  if (best == -kInf) throw std::runtime_error("goal is not connected to start in the H-Graph");

  // Fewest edges among the widest routes: layered BFS over edges at least as wide.
  std::vector<std::size_t> pred(n, kNoNode);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> layer{HGraph::kStart};
  seen[HGraph::kStart] = true;
  while (!layer.empty() && !seen[HGraph::kGoal]) {
    std::sort(layer.begin(), layer.end());
    std::vector<std::size_t> next;
    for (std::size_t u : layer) {
      for (const auto& [v, e] : graph.adjacency[u]) {
        if (seen[v] || graph.edges[e].geometry.min_clearance < best) continue;
        seen[v] = true;
        pred[v] = u;
        next.push_back(v);
      }
    }
    layer = std::move(next);
  }
  return unwind(pred, HGraph::kGoal);
}

}  // namespace

std::string variant_name(const HGraphVariant& v) {
  return std::visit(Overloaded{[](const AllPairs&) { return std::string("all-pairs"); },
                               [](const Neighborhood&) { return std::string("neighborhood"); },
                               [](const EditDistance&) { return std::string("edit"); },
                               [](const EditDistanceNeighborhood&) { return std::string("edit-neighborhood"); }},
                    v);
}

std::size_t hgraph_node_id(const HGraph& graph, const std::vector<Path>& paths, std::size_t path_id,
                           std::size_t index) {
  const Path& p = paths.at(path_id);
  if (index == 0) return HGraph::kStart;
  if (index + 1 == p.size()) return HGraph::kGoal;
  // Interior nodes are laid out path by path after start and goal.
  std::size_t id = 2;
  for (std::size_t k = 0; k < path_id; ++k) id += paths[k].size() - 2;
  const std::size_t out = id + index - 1;
  if (out >= graph.nodes.size()) throw std::out_of_range("hgraph_node_id: node out of range");
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const Scene& scene, const HGraph& graph,
                                                                 const std::vector<Path>& paths) {
  std::vector<NodePair> pairs = std::visit(
      Overloaded{[&](const AllPairs&) { return all_pairs(graph); },
                 [&](const Neighborhood& nb) { return within(scene, graph, all_pairs(graph), nb.radius); },
                 [&](const EditDistance& ed) { return edit_candidates(scene, graph, paths, ed); },
                 [&](const EditDistanceNeighborhood& edn) {
                   return within(scene, graph, edit_candidates(scene, graph, paths, edn.edit), edn.radius);
                 }},
      graph.variant);
  const auto existing = existing_edges(graph);
  std::erase_if(pairs, [&](const NodePair& p) { return existing.count(p) > 0; });
  return pairs;
}

HGraph build_hgraph(const Scene& scene, const std::vector<Path>& paths, const HGraphVariant& variant,
                    const BuildOptions& options) {
  validate_inputs(scene, paths);
  const auto t0 = std::chrono::steady_clock::now();

  HGraph graph;
  graph.variant = variant;
  graph.clearance_floor = scene.clearance_floor();
  graph.nodes.push_back({paths.front().front(), {NodeOrigin::Kind::Start, 0, 0}});
  graph.nodes.push_back({paths.front().back(), {NodeOrigin::Kind::Goal, 0, 0}});
  for (std::size_t k = 0; k < paths.size(); ++k) {
    for (std::size_t i = 1; i + 1 < paths[k].size(); ++i) {
      graph.nodes.push_back({paths[k].nodes[i], {NodeOrigin::Kind::PathNode, k, i}});
    }
  }

  const auto res = SamplingResolution::of(scene);
  std::set<NodePair> present;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    for (std::size_t i = 0; i + 1 < paths[k].size(); ++i) {
      const NodePair e = ordered(hgraph_node_id(graph, paths, k, i), hgraph_node_id(graph, paths, k, i + 1));
      if (e.first == e.second || !present.insert(e).second) continue;
      graph.edges.push_back(
          {e.first, e.second, compute_edge_geometry(scene, graph.nodes[e.first].config, graph.nodes[e.second].config, res),
           false});
    }
  }

  const auto pairs = candidate_pairs(scene, graph, paths);
  const auto checked = check_pairs(scene, graph, pairs, options.threads);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!checked[i].ok) continue;
    graph.edges.push_back({pairs[i].first, pairs[i].second, checked[i].geometry, true});
    ++graph.stats.bridges_added;
  }
  graph.stats.candidate_pairs = pairs.size();
  graph.stats.local_planner_calls = pairs.size();

  graph.adjacency.assign(graph.nodes.size(), {});
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    graph.adjacency[graph.edges[e].u].emplace_back(graph.edges[e].v, e);
    graph.adjacency[graph.edges[e].v].emplace_back(graph.edges[e].u, e);
  }
  graph.stats.build_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return graph;
}

std::vector<std::size_t> best_route(const HGraph& graph, const QualityMeasure& measure) {
  switch (measure.kind()) {
    case QualityMeasure::Kind::Length:
    case QualityMeasure::Kind::KInverseClearance: return additive_route(graph, measure);
    case QualityMeasure::Kind::BottleneckClearance: return bottleneck_route(graph);
    case QualityMeasure::Kind::AverageClearance: break;
  }
  throw std::invalid_argument("measure '" + measure.name() + "' is evaluation-only and cannot be optimised");
}

Path extract_best_path(const HGraph& graph, const QualityMeasure& measure) {
  Path path;
  for (std::size_t id : best_route(graph, measure)) path.nodes.push_back(graph.nodes[id].config);
  return path;
}

double route_value(const HGraph& graph, const std::vector<std::size_t>& route, const QualityMeasure& m) {
  double sum = 0.0;
  double total = 0.0;
  double low = kInf;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    const auto& g = edge_between(graph, route[i], route[i + 1]).geometry;
    switch (m.kind()) {
      case QualityMeasure::Kind::Length:
      case QualityMeasure::Kind::KInverseClearance: sum += edge_weight(g, m, graph.clearance_floor); break;
      case QualityMeasure::Kind::BottleneckClearance: low = std::min(low, g.min_clearance); break;
      case QualityMeasure::Kind::AverageClearance:
        if (g.length > 0.0) {
          sum += g.length * g.mean_clearance();
          total += g.length;
        }
        low = std::min(low, g.min_clearance);
        break;
    }
  }
  if (m.kind() == QualityMeasure::Kind::BottleneckClearance) return low;
  if (m.kind() == QualityMeasure::Kind::AverageClearance) return total > 0.0 ? sum / total : low;
  return sum;
}

}  // namespace pathmerge
