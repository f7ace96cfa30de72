#include "pathmerge/io.hpp"

#include "pathmerge/hgraph.hpp"
#include "pathmerge/pathmatch.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pathmerge {

using nlohmann::json;

json config_to_json(const Config& c) {
  json out = json::array();
  for (const auto& p : c.poses) out.push_back({p.x, p.y, p.theta});
  return out;
}

Config config_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::runtime_error("config must be a non-empty array of [x, y, theta]");
  Config c;
  for (const auto& pose : j) {
    if (!pose.is_array() || pose.size() != 3) throw std::runtime_error("pose must be [x, y, theta]");
    for (const auto& v : pose) {
      if (!v.is_number()) throw std::runtime_error("pose entries must be numbers");
    }
    const double x = pose[0].get<double>();
    const double y = pose[1].get<double>();
    const double theta = pose[2].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(theta)) {
      throw std::runtime_error("pose entries must be finite");
    }
    c.poses.emplace_back(x, y, theta);
  }
  return c;
}

std::string write_path_json(const PathFile& file) {
  json nodes = json::array();
  for (const auto& c : file.path.nodes) nodes.push_back(config_to_json(c));
  json doc{{"scene_hash", file.scene_hash},
           {"dof", file.dof},
           {"nodes", nodes},
           {"meta", {{"planner", file.meta.planner}, {"seed", file.meta.seed}, {"wall_time_s", file.meta.wall_time_s}}}};
  return doc.dump(1) + "\n";
}

namespace {

const json& key(const json& obj, const char* name, const std::string& prefix = "") {
  if (!obj.is_object() || !obj.contains(name)) throw std::runtime_error("path file: missing key '" + prefix + name + "'");
  return obj[name];
}

}  // namespace

PathFile read_path_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("path file: parse error: ") + e.what());
  }
  PathFile out;
  const auto& hash = key(doc, "scene_hash");
  if (!hash.is_string()) throw std::runtime_error("path file: 'scene_hash' must be a string");
  out.scene_hash = hash.get<std::string>();
  const auto& dof = key(doc, "dof");
  if (!dof.is_number_unsigned()) throw std::runtime_error("path file: 'dof' must be a non-negative integer");
  out.dof = dof.get<std::size_t>();
  const auto& nodes = key(doc, "nodes");
  if (!nodes.is_array()) throw std::runtime_error("path file: 'nodes' must be an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    try {
      out.path.nodes.push_back(config_from_json(nodes[i]));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("path file: 'nodes[" + std::to_string(i) + "]': " + e.what());
    }
    if (out.path.nodes.back().dof() != out.dof) {
      throw std::runtime_error("path file: 'nodes[" + std::to_string(i) + "]' does not match 'dof'");
    }
  }
  if (doc.contains("meta")) {
    const auto& meta = doc["meta"];
    if (!meta.is_object()) throw std::runtime_error("path file: 'meta' must be an object");
    if (meta.contains("planner")) {
      if (!meta["planner"].is_string()) throw std::runtime_error("path file: 'meta.planner' must be a string");
      out.meta.planner = meta["planner"].get<std::string>();
    }
    if (meta.contains("seed")) {
      if (!meta["seed"].is_number_unsigned()) throw std::runtime_error("path file: 'meta.seed' must be an integer");
      out.meta.seed = meta["seed"].get<std::uint64_t>();
    }
    if (meta.contains("wall_time_s")) {
      if (!meta["wall_time_s"].is_number()) throw std::runtime_error("path file: 'meta.wall_time_s' must be a number");
      out.meta.wall_time_s = meta["wall_time_s"].get<double>();
    }
  }
  return out;
}

void save_path_file(const std::string& filename, const PathFile& file) {
  write_text_file(filename, write_path_json(file));
}

PathFile load_path_file(const std::string& filename) {
  try {
    return read_path_json(read_text_file(filename));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(filename + ": " + e.what());
  }
}

json hgraph_to_json(const HGraph& graph) {
  json nodes = json::array();
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    json origin;
    switch (n.origin.kind) {
      case NodeOrigin::Kind::Start: origin = "start"; break;
      case NodeOrigin::Kind::Goal: origin = "goal"; break;
      case NodeOrigin::Kind::PathNode: origin = {{"path", n.origin.path_id}, {"index", n.origin.index}}; break;
    }
    nodes.push_back({{"id", i}, {"config", config_to_json(n.config)}, {"origin", origin}});
  }
  json edges = json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"length", e.geometry.length},
                     {"min_clearance", e.geometry.min_clearance},
                     {"bridge", e.bridge}});
  }
  return {{"variant", variant_name(graph.variant)},
          {"nodes", nodes},
          {"edges", edges},
          {"stats",
           {{"candidate_pairs", graph.stats.candidate_pairs},
            {"local_planner_calls", graph.stats.local_planner_calls},
            {"bridges_added", graph.stats.bridges_added},
            {"build_time_s", graph.stats.build_time_s}}}};
}

json alignment_to_json(const Alignment& alignment) {
  json ops = json::array();
  for (const auto& op : alignment.ops) {
    switch (op.kind) {
      case EditOp::Kind::Match: ops.push_back({{"op", "match"}, {"i", op.i}, {"j", op.j}}); break;
      case EditOp::Kind::GapP: ops.push_back({{"op", "gap_p"}, {"i", op.i}}); break;
      case EditOp::Kind::GapQ: ops.push_back({{"op", "gap_q"}, {"j", op.j}}); break;
    }
  }
  return {{"cost", alignment.cost}, {"ops", ops}};
}

std::string read_text_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + filename + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& filename, const std::string& contents) {
  std::ofstream out(filename, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + filename + "'");
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + filename + "'");
}

}  // namespace pathmerge
