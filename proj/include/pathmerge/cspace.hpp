#pragma once

#include "pathmerge/config.hpp"
#include "pathmerge/scene.hpp"

#include <random>
#include <vector>

namespace pathmerge {

using Rng = std::mt19937_64;

/// Robot bodies placed at the poses of `c`, in workspace coordinates.
std::vector<Polygon> place_bodies(const Scene& scene, const Config& c);

/// Minimum distance from any placed body to any obstacle, and between bodies
/// when there are several. 0 iff in collision. +inf when there is nothing
/// to measure against.
double scene_clearance(const Scene& scene, const Config& c);

/// Inside bounds (every placed body) and strictly positive clearance.
bool is_free(const Scene& scene, const Config& c);

/// Upper bound on the workspace displacement of any body point along the
/// straight local path a -> b. Clearance is 1-Lipschitz in this quantity.
double motion_extent(const Scene& scene, const Config& a, const Config& b);

/// Subdivision local planner: checks the straight local path a -> b
/// midpoint-first, halving until neighbouring checked configurations are
/// within `eps_res` of motion extent. Symmetric in (a, b) and monotone in
/// `eps_res`. Returns true when every checked configuration is free.
bool local_plan(const Scene& scene, const Config& a, const Config& b, double eps_res);
inline bool local_plan(const Scene& scene, const Config& a, const Config& b) {
  return local_plan(scene, a, b, scene.eps_res);
}

/// Uniform sample over the bounds (positions) and [0, 2pi) (angles). Angles
/// stay at the start orientation for translation-only scenes.
Config sample_uniform(const Scene& scene, Rng& rng);

}  // namespace pathmerge
