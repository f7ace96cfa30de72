#include "pathmerge/scene.hpp"

#include "pathmerge/cspace.hpp"
#include "pathmerge/io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace pathmerge {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw SceneError(path + key, "missing");
  return obj.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw SceneError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SceneError(field, "not finite");
  return v;
}

Point2 point(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw SceneError(field, "expected [x, y]");
  return {number(j[0], field), number(j[1], field)};
}

Polygon polygon(const json& j, const std::string& field) {
  std::vector<Point2> vertices;
  std::vector<std::vector<int>> parts;
  const json* verts = &j;
  if (j.is_object()) {
    verts = &require(j, "vertices", field + ".");
    if (j.contains("convex_parts")) {
      const auto& jp = j.at("convex_parts");
      if (!jp.is_array()) throw SceneError(field + ".convex_parts", "expected an array");
      for (const auto& part : jp) {
        if (!part.is_array()) throw SceneError(field + ".convex_parts", "expected index arrays");
        std::vector<int> idx;
        for (const auto& k : part) {
          if (!k.is_number_integer()) throw SceneError(field + ".convex_parts", "expected integer indices");
          idx.push_back(k.get<int>());
        }
        parts.push_back(std::move(idx));
      }
    }
  }
  if (!verts->is_array()) throw SceneError(field, "expected an array of [x, y] vertices");
  for (std::size_t i = 0; i < verts->size(); ++i) {
    vertices.push_back(point((*verts)[i], field + "[" + std::to_string(i) + "]"));
  }
  try {
    return Polygon::make(std::move(vertices), std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw SceneError(field, e.what());
  }
}

json polygon_json(const Polygon& poly) {
  json verts = json::array();
  for (const auto& v : poly.vertices()) verts.push_back({v.x(), v.y()});
  if (poly.is_convex()) return verts;
  return json{{"vertices", verts}, {"convex_parts", poly.convex_parts()}};
}

std::vector<Polygon> polygon_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw SceneError(field, "expected an array of polygons");
  std::vector<Polygon> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(polygon(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Config config_from(const json& j, const std::string& field) {
  try {
    return config_from_json(j);
  } catch (const std::exception& e) {
    throw SceneError(field, e.what());
  }
}

}  // namespace

Scene load_scene(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneError("", std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw SceneError("", "scene document must be a JSON object");

  Scene scene;
  const auto& b = require(doc, "bounds", "");
  scene.bounds.lo = point(require(b, "min", "bounds."), "bounds.min");
  scene.bounds.hi = point(require(b, "max", "bounds."), "bounds.max");
  scene.robot_bodies = polygon_list(require(doc, "robot_bodies", ""), "robot_bodies");
  scene.obstacles = polygon_list(require(doc, "obstacles", ""), "obstacles");
  const auto& w = require(doc, "weights", "");
  scene.weights.w_trans = number(require(w, "w_trans", "weights."), "weights.w_trans");
  scene.weights.w_rot = number(require(w, "w_rot", "weights."), "weights.w_rot");
  const auto& q = require(doc, "query", "");
  scene.start = config_from(require(q, "start", "query."), "query.start");
  scene.goal = config_from(require(q, "goal", "query."), "query.goal");

  scene.eps_res = doc.contains("eps_res") ? number(doc.at("eps_res"), "eps_res")
                                          : 0.01 * scene.bounds.diameter();
  scene.clearance_sample_step = doc.contains("clearance_sample_step")
                                    ? number(doc.at("clearance_sample_step"), "clearance_sample_step")
                                    : scene.eps_res;
  if (doc.contains("translation_only")) {
    if (!doc.at("translation_only").is_boolean()) throw SceneError("translation_only", "expected a boolean");
    scene.translation_only = doc.at("translation_only").get<bool>();
  }
  validate_scene(scene);
  return scene;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("", "cannot open scene file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scene(ss.str());
}

void validate_scene(const Scene& scene) {
  if (!scene.bounds.lo.allFinite() || !scene.bounds.hi.allFinite()) {
    throw SceneError("bounds", "not finite");
  }
  if (!(scene.bounds.lo.x() < scene.bounds.hi.x() && scene.bounds.lo.y() < scene.bounds.hi.y())) {
    throw SceneError("bounds", "min must be strictly below max");
  }
  if (scene.robot_bodies.empty()) throw SceneError("robot_bodies", "at least one body is required");
  if (!(scene.weights.w_trans > 0.0)) throw SceneError("weights.w_trans", "must be > 0");
  if (!(scene.weights.w_rot >= 0.0)) throw SceneError("weights.w_rot", "must be >= 0");
  if (!(scene.eps_res > 0.0)) throw SceneError("eps_res", "must be > 0");
  if (!(scene.clearance_sample_step > 0.0)) throw SceneError("clearance_sample_step", "must be > 0");
  const std::size_t bodies = scene.robot_bodies.size();
  if (scene.start.bodies() != bodies) {
    throw SceneError("query.start", "dof mismatch: expected " + std::to_string(3 * bodies));
  }
  if (scene.goal.bodies() != bodies) {
    throw SceneError("query.goal", "dof mismatch: expected " + std::to_string(3 * bodies));
  }
  if (!is_free(scene, scene.start)) throw SceneError("query.start", "in collision or out of bounds");
  if (!is_free(scene, scene.goal)) throw SceneError("query.goal", "in collision or out of bounds");
}

std::string serialize_scene(const Scene& scene) {
  json doc;
  doc["bounds"] = {{"min", {scene.bounds.lo.x(), scene.bounds.lo.y()}},
                   {"max", {scene.bounds.hi.x(), scene.bounds.hi.y()}}};
  doc["robot_bodies"] = json::array();
  for (const auto& p : scene.robot_bodies) doc["robot_bodies"].push_back(polygon_json(p));
  doc["obstacles"] = json::array();
  for (const auto& p : scene.obstacles) doc["obstacles"].push_back(polygon_json(p));
  doc["weights"] = {{"w_trans", scene.weights.w_trans}, {"w_rot", scene.weights.w_rot}};
  doc["query"] = {{"start", config_to_json(scene.start)}, {"goal", config_to_json(scene.goal)}};
  doc["eps_res"] = scene.eps_res;
  doc["clearance_sample_step"] = scene.clearance_sample_step;
  doc["translation_only"] = scene.translation_only;
  return doc.dump();
}

std::string scene_hash(const Scene& scene) {
  const std::string canonical = serialize_scene(scene);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

}  // namespace pathmerge
