#pragma once

// Hybridization graph: the union of several input paths sharing start and
// goal, plus local-planner "bridge" edges between their nodes. The best
// hybrid path under any supported measure is read off with a Dijkstra
// variant; edge geometry is cached so the graph can be re-queried.

#include "pathmerge/path.hpp"
#include "pathmerge/pathmatch.hpp"
#include "pathmerge/quality.hpp"
#include "pathmerge/scene.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pathmerge {

struct AllPairs {};
struct Neighborhood {
  double radius = 0.0;
};
struct EditDistance {
  MatchParams match;
  /// Derive gap_ext per path pair from the median step length.
  bool auto_gap_ext = true;
  /// Multiplier on the derived gap_ext.
  double gap_ext_scale = 1.0;
};
struct EditDistanceNeighborhood {
  EditDistance edit;
  double radius = 0.0;
};

using HGraphVariant = std::variant<AllPairs, Neighborhood, EditDistance, EditDistanceNeighborhood>;

std::string variant_name(const HGraphVariant& v);

struct NodeOrigin {
  enum class Kind : std::uint8_t { Start, Goal, PathNode };
  Kind kind = Kind::PathNode;
  std::size_t path_id = 0;
  std::size_t index = 0;  // position within the input path
};

struct HGraphNode {
  Config config;
  NodeOrigin origin;
};

struct HGraphEdge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  EdgeGeometry geometry;
  bool bridge = false;  // added by the local planner, not an input edge
};

struct BuildStats {
  std::size_t candidate_pairs = 0;
  std::size_t local_planner_calls = 0;
  std::size_t bridges_added = 0;
  double build_time_s = 0.0;
};

struct HGraph {
  std::vector<HGraphNode> nodes;
  std::vector<HGraphEdge> edges;
  HGraphVariant variant;
  BuildStats stats;
  double clearance_floor = 0.0;

  static constexpr std::size_t kStart = 0;
  static constexpr std::size_t kGoal = 1;

  /// Adjacency lists of (neighbour, edge index), built by build_hgraph.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency;
};

struct BuildOptions {
  /// Worker threads for candidate checks; 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// Candidate bridge pairs (u < v, sorted) for a variant, before local planning.
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const Scene& scene, const HGraph& graph,
                                                                 const std::vector<Path>& paths);

/// H-Graph node id of node `index` of input path `path_id`.
std::size_t hgraph_node_id(const HGraph& graph, const std::vector<Path>& paths, std::size_t path_id,
                           std::size_t index);

/// Throws std::invalid_argument on an empty path list, mismatched start or
/// goal (1e-9), or dof mismatch.
HGraph build_hgraph(const Scene& scene, const std::vector<Path>& paths, const HGraphVariant& variant,
                    const BuildOptions& options = {});

/// Optimal path in the graph. Additive measures use Dijkstra on the cached
/// edge weights, ties broken by fewer edges then smaller predecessor id;
/// BottleneckClearance maximises the smallest edge clearance, then uses the
/// fewest edges. Throws std::invalid_argument for AverageClearance.
Path extract_best_path(const HGraph& graph, const QualityMeasure& measure);

/// Value of `measure` along a node-id route, folded exactly as extraction does.
double route_value(const HGraph& graph, const std::vector<std::size_t>& route, const QualityMeasure& m);

/// Best route as node ids (start first).
std::vector<std::size_t> best_route(const HGraph& graph, const QualityMeasure& measure);

}  // namespace pathmerge
