#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sphereflow/metric.hpp"

namespace sphereflow {

// Closed polyline on the (theta, phi) chart. phi is periodic; a candidate
// either winds once around the axis (latitude-like) or is contractible.
struct CurveCandidate {
  std::vector<std::array<double, 2>> vertices;  // (theta, phi)
  double enclosed_area = 0.0;
  double length = 0.0;
};

// Heuristic upper bound on the infimal length of closed curves enclosing
// area a: latitude and translated-circle seeds, random vertex perturbation
// with local smoothing, and area projection. Deterministic for a fixed seed;
// trials use independent sub-seeds. The result never exceeds the latitude
// circle length at the same area.
double brute_force_min_length(const MetricState& state, double a,
                              int resolution, int trials,
                              std::uint64_t seed = 12345);

}  // namespace sphereflow
