#include "pathmerge/quality.hpp"

#include "pathmerge/cspace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pathmerge {

namespace {

constexpr int kMaxSampleDepth = 40;

struct Sampler {
  const Scene& scene;
  const Config& a;
  const Config& b;
  double extent;
  double step;
  double relative;
  double floor;
  std::vector<ClearanceSample>& out;

  double clearance_at(double t) const { return scene_clearance(scene, interpolate(a, b, t)); }

  // Emits the midpoint and right endpoint of every leaf in [t0, t1].
  void refine(double t0, double c0, double t1, double c1, int depth) {
    const double tm = 0.5 * (t0 + t1);
    const double cm = clearance_at(tm);
    const double seg = extent * (t1 - t0);
    const double local = std::max(std::min({c0, cm, c1}), floor);
    if (depth < kMaxSampleDepth && (seg > step || seg > relative * local)) {
      refine(t0, c0, tm, cm, depth + 1);
      refine(tm, cm, t1, c1, depth + 1);
      return;
    }
    out.push_back({tm, 0.0, cm});
    out.push_back({t1, 0.0, c1});
  }
};

std::string format_k(double k) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, k);
  return std::string(buf, res.ptr);
}

}  // namespace

QualityMeasure QualityMeasure::k_inverse(double k) {
  if (!std::isfinite(k) || k < 0.0) throw std::invalid_argument("k must be finite and >= 0");
  return QualityMeasure(Kind::KInverseClearance, k);
}

QualityMeasure QualityMeasure::parse(const std::string& name) {
  if (name == "length") return length();
  if (name == "bottleneck") return bottleneck();
  if (name == "avg-clearance") return average_clearance();
  if (name.rfind("kinv:", 0) == 0) {
    const std::string arg = name.substr(5);
    double k = 0.0;
    const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (arg.empty() || res.ec != std::errc() || res.ptr != arg.data() + arg.size()) {
      throw std::invalid_argument("bad k in measure '" + name + "'");
    }
    return k_inverse(k);
  }
  throw std::invalid_argument("unknown measure '" + name +
                              "' (expected length, kinv:<k>, bottleneck, avg-clearance)");
}

std::string QualityMeasure::name() const {
  switch (kind_) {
    case Kind::Length: return "length";
    case Kind::KInverseClearance: return "kinv:" + format_k(k_);
    case Kind::BottleneckClearance: return "bottleneck";
    case Kind::AverageClearance: return "avg-clearance";
  }
  return {};
}

double EdgeGeometry::k_inverse_integral(double k, double floor) const {
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < clearance_samples.size(); i += 2) {
    const double dt = clearance_samples[i + 1].t - clearance_samples[i - 1].t;
    sum += dt * std::pow(std::max(clearance_samples[i].clearance, floor), -k);
  }
  return length * sum;
}

double EdgeGeometry::mean_clearance() const {
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < clearance_samples.size(); i += 2) {
    const double dt = clearance_samples[i + 1].t - clearance_samples[i - 1].t;
    sum += dt * clearance_samples[i].clearance;
  }
  return sum;
}

EdgeGeometry compute_edge_geometry(const Scene& scene, const Config& a_in, const Config& b_in,
                                   const SamplingResolution& res) {
  const bool swap = config_less(b_in, a_in);
  const Config& a = swap ? b_in : a_in;
  const Config& b = swap ? a_in : b_in;

  EdgeGeometry g;
  g.length = config_distance(a, b, scene.weights);
  const double c0 = scene_clearance(scene, a);
  const double c1 = scene_clearance(scene, b);
  g.clearance_samples.push_back({0.0, 0.0, c0});
  Sampler sampler{scene, a, b, motion_extent(scene, a, b), res.step, res.relative,
                  scene.clearance_floor(), g.clearance_samples};
  sampler.refine(0.0, c0, 1.0, c1, 0);
  g.min_clearance = std::numeric_limits<double>::infinity();
  for (auto& s : g.clearance_samples) {
    s.arc_offset = s.t * g.length;
    g.min_clearance = std::min(g.min_clearance, s.clearance);
  }
  return g;
}

double edge_weight(const EdgeGeometry& g, const QualityMeasure& m, double clearance_floor) {
  switch (m.kind()) {
    case QualityMeasure::Kind::Length: return g.length;
    case QualityMeasure::Kind::KInverseClearance: return g.k_inverse_integral(m.k(), clearance_floor);
    default: break;
  }
  throw std::invalid_argument("measure '" + m.name() + "' has no additive edge weight");
}

double path_length(const Path& path, const MetricWeights& w) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    sum += config_distance(path.nodes[i], path.nodes[i + 1], w);
  }
  return sum;
}

double integrated_k_inverse_clearance(const Scene& scene, const Path& path, double k,
                                      const SamplingResolution& res) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    sum += compute_edge_geometry(scene, path.nodes[i], path.nodes[i + 1], res)
               .k_inverse_integral(k, scene.clearance_floor());
  }
  return sum;
}

double bottleneck_clearance(const Scene& scene, const Path& path, const SamplingResolution& res) {
  if (path.size() == 1) return scene_clearance(scene, path.nodes.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    best = std::min(best, compute_edge_geometry(scene, path.nodes[i], path.nodes[i + 1], res).min_clearance);
  }
  return best;
}

double average_clearance(const Scene& scene, const Path& path, const SamplingResolution& res) {
  double weighted = 0.0;
  double total = 0.0;
  double fallback = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto g = compute_edge_geometry(scene, path.nodes[i], path.nodes[i + 1], res);
    if (g.length > 0.0) {
      weighted += g.length * g.mean_clearance();
      total += g.length;
    }
    fallback = std::min(fallback, g.min_clearance);
  }
  if (total > 0.0) return weighted / total;
  // Zero-length path: the clearance of the (single) configuration.
  return path.size() == 1 ? scene_clearance(scene, path.nodes.front()) : fallback;
}

double evaluate(const Scene& scene, const Path& path, const QualityMeasure& m,
                const SamplingResolution& res) {
  switch (m.kind()) {
    case QualityMeasure::Kind::Length: return path_length(path, scene.weights);
    case QualityMeasure::Kind::KInverseClearance:
      return integrated_k_inverse_clearance(scene, path, m.k(), res);
    case QualityMeasure::Kind::BottleneckClearance: return bottleneck_clearance(scene, path, res);
    case QualityMeasure::Kind::AverageClearance: return average_clearance(scene, path, res);
  }
  return 0.0;
}

}  // namespace pathmerge
