#include "pathmerge/render.hpp"

#include "pathmerge/cspace.hpp"

#include <array>
#include <cstdio>
#include <sstream>

namespace pathmerge {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(const Bounds& b, double ppu) : b_(b), ppu_(ppu) {}
  std::string x(double wx) const { return num((wx - b_.lo.x()) * ppu_); }
  std::string y(double wy) const { return num((b_.hi.y() - wy) * ppu_); }
  std::string point(const Point2& p) const { return x(p.x()) + "," + y(p.y()); }
  std::string width() const { return num((b_.hi.x() - b_.lo.x()) * ppu_); }
  std::string height() const { return num((b_.hi.y() - b_.lo.y()) * ppu_); }
  double ppu() const { return ppu_; }

 private:
  Bounds b_;
  double ppu_;
};

std::string points_attr(const Canvas& cv, const std::vector<Point2>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += cv.point(pts[i]);
  }
  return out;
}

}  // namespace

std::string render_svg(const Scene& scene, const std::vector<Path>& paths, const RenderOptions& opt) {
  const Canvas cv(scene.bounds, opt.pixels_per_unit);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << cv.width() << "\" height=\""
      << cv.height() << "\" viewBox=\"0 0 " << cv.width() << ' ' << cv.height() << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << cv.width() << "\" height=\"" << cv.height()
      << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  svg << "<g id=\"obstacles\" fill=\"#555555\" stroke=\"none\">\n";
  for (const auto& obs : scene.obstacles) {
    svg << "<polygon points=\"" << points_attr(cv, obs.vertices()) << "\"/>\n";
  }
  svg << "</g>\n";

  if (opt.draw_robot) {
    svg << "<g id=\"robot\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\" stroke-dasharray=\"3,2\">\n";
    for (const Config* c : {&scene.start, &scene.goal}) {
      for (const auto& body : place_bodies(scene, *c)) {
        svg << "<polygon points=\"" << points_attr(cv, body.vertices()) << "\"/>\n";
      }
    }
    svg << "</g>\n";
  }

  svg << "<g id=\"paths\" fill=\"none\" stroke-width=\"2\" stroke-linejoin=\"round\">\n";
  for (std::size_t k = 0; k < paths.size(); ++k) {
    std::vector<Point2> pts;
    for (const auto& c : paths[k].nodes) pts.push_back(c.poses.front().translation());
    svg << "<polyline stroke=\"" << kPalette[k % kPalette.size()] << "\" points=\"" << points_attr(cv, pts)
        << "\"/>\n";
  }
  svg << "</g>\n";

  const std::string r = num(0.15 * cv.ppu());
  const Point2 s = scene.start.poses.front().translation();
  const Point2 g = scene.goal.poses.front().translation();
  svg << "<circle id=\"start\" cx=\"" << cv.x(s.x()) << "\" cy=\"" << cv.y(s.y()) << "\" r=\"" << r
      << "\" fill=\"#2ca02c\"/>\n";
  svg << "<circle id=\"goal\" cx=\"" << cv.x(g.x()) << "\" cy=\"" << cv.y(g.y()) << "\" r=\"" << r
      << "\" fill=\"#d62728\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pathmerge
