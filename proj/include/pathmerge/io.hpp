#pragma once

// JSON file formats: configurations, path files, H-Graph and alignment dumps.

#include "pathmerge/config.hpp"
#include "pathmerge/path.hpp"

#include <json.hpp>

#include <string>

namespace pathmerge {

struct HGraph;
struct Alignment;

/// [[x, y, theta], ...], one triple per body.
nlohmann::json config_to_json(const Config& c);
Config config_from_json(const nlohmann::json& j);

struct PathMeta {
  std::string planner;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

struct PathFile {
  std::string scene_hash;
  std::size_t dof = 0;
  Path path;
  PathMeta meta;
};

std::string write_path_json(const PathFile& file);
/// Throws std::runtime_error naming the offending key.
PathFile read_path_json(const std::string& text);

void save_path_file(const std::string& filename, const PathFile& file);
PathFile load_path_file(const std::string& filename);

nlohmann::json hgraph_to_json(const HGraph& graph);
nlohmann::json alignment_to_json(const Alignment& alignment);

std::string read_text_file(const std::string& filename);
void write_text_file(const std::string& filename, const std::string& contents);

}  // namespace pathmerge
