#pragma once

// Path-quality measures: length, integrated k-inverse clearance, bottleneck
// clearance and average clearance. Clearance is sampled per edge by
// EdgeGeometry; paths and H-Graph edges share that sampling, so a path's
// quality equals the fold of its edge weights exactly.

#include "pathmerge/config.hpp"
#include "pathmerge/path.hpp"
#include "pathmerge/scene.hpp"

#include <string>
#include <vector>

namespace pathmerge {

class QualityMeasure {
 public:
  enum class Kind { Length, KInverseClearance, BottleneckClearance, AverageClearance };

  static QualityMeasure length() { return QualityMeasure(Kind::Length, 0.0); }
  static QualityMeasure k_inverse(double k);
  static QualityMeasure bottleneck() { return QualityMeasure(Kind::BottleneckClearance, 0.0); }
  static QualityMeasure average_clearance() { return QualityMeasure(Kind::AverageClearance, 0.0); }

  /// Accepts `length`, `kinv:<k>`, `bottleneck`, `avg-clearance`.
  /// Throws std::invalid_argument otherwise.
  static QualityMeasure parse(const std::string& name);
  std::string name() const;

  Kind kind() const { return kind_; }
  double k() const { return k_; }

  bool higher_is_better() const {
    return kind_ == Kind::BottleneckClearance || kind_ == Kind::AverageClearance;
  }
  /// Strictly better.
  bool better(double a, double b) const { return higher_is_better() ? a > b : a < b; }
  /// At least as good.
  bool no_worse(double a, double b) const { return higher_is_better() ? a >= b : a <= b; }

  bool operator==(const QualityMeasure&) const = default;

 private:
  QualityMeasure(Kind kind, double k) : kind_(kind), k_(k) {}
  Kind kind_;
  double k_;
};

/// Clearance sampling resolution. A sub-segment is split while its motion
/// extent exceeds `step`, or exceeds `relative` times the smallest clearance
/// seen on it (floored at the scene's clearance floor).
struct SamplingResolution {
  double step = 0.0;
  double relative = 0.05;

  static SamplingResolution of(const Scene& scene) { return {scene.clearance_sample_step, 0.05}; }
  SamplingResolution refined(double factor) const { return {step / factor, relative / factor}; }
};

struct ClearanceSample {
  double t;           // dyadic fraction along the edge
  double arc_offset;  // t * length
  double clearance;
};

/// Cached geometry of a straight local path. Samples run from the
/// lexicographically smaller endpoint; even indices bound sub-segments and
/// odd indices are their midpoints.
struct EdgeGeometry {
  double length = 0.0;
  std::vector<ClearanceSample> clearance_samples;
  double min_clearance = 0.0;

  /// length * sum over sub-segments of dt * max(mid clearance, floor)^-k.
  double k_inverse_integral(double k, double floor) const;
  /// Length-weighted mean of midpoint clearance along the edge.
  double mean_clearance() const;
};

EdgeGeometry compute_edge_geometry(const Scene& scene, const Config& a, const Config& b,
                                   const SamplingResolution& res);

/// Additive per-edge weight for Length and KInverseClearance. Throws
/// std::invalid_argument for the other measures.
double edge_weight(const EdgeGeometry& g, const QualityMeasure& m, double clearance_floor);

double path_length(const Path& path, const MetricWeights& w);
double integrated_k_inverse_clearance(const Scene& scene, const Path& path, double k,
                                      const SamplingResolution& res);
double bottleneck_clearance(const Scene& scene, const Path& path, const SamplingResolution& res);
double average_clearance(const Scene& scene, const Path& path, const SamplingResolution& res);

inline double integrated_k_inverse_clearance(const Scene& scene, const Path& path, double k) {
  return integrated_k_inverse_clearance(scene, path, k, SamplingResolution::of(scene));
}
inline double bottleneck_clearance(const Scene& scene, const Path& path) {
  return bottleneck_clearance(scene, path, SamplingResolution::of(scene));
}
inline double average_clearance(const Scene& scene, const Path& path) {
  return average_clearance(scene, path, SamplingResolution::of(scene));
}

double evaluate(const Scene& scene, const Path& path, const QualityMeasure& m,
                const SamplingResolution& res);
inline double evaluate(const Scene& scene, const Path& path, const QualityMeasure& m) {
  return evaluate(scene, path, m, SamplingResolution::of(scene));
}

}  // namespace pathmerge
