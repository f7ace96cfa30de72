#pragma once

#include "pathmerge/path.hpp"
#include "pathmerge/scene.hpp"

#include <string>
#include <vector>

namespace pathmerge {

struct RenderOptions {
  double pixels_per_unit = 40.0;
  bool draw_robot = true;  // robot outline at start and goal
};

/// SVG 1.1 document: filled obstacles, one polyline per path (translation of
/// the first body), start and goal markers. Byte-identical for equal inputs.
std::string render_svg(const Scene& scene, const std::vector<Path>& paths, const RenderOptions& opt = {});

}  // namespace pathmerge
