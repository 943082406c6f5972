#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sphereflow/flow.hpp"
#include "sphereflow/metric.hpp"

namespace sphereflow {

// One sample of the isoperimetric profile along the latitude-circle family.
struct IsoProfilePoint {
  double a = 0.0;             // enclosed cap area
  double theta = 0.0;         // colatitude whose cap has area a
  double length = 0.0;        // latitude-circle length L
  double round_length = 0.0;  // sqrt(4pi a - a^2)
  double ratio_sq = 0.0;      // (L / round_length)^2
  double r = 0.0;             // meridian distance of the circle from the pole
};

// sqrt(4pi a - a^2); a must lie in (0, 4pi).
double round_length(double a);

// Invert cap_area by bisection; |cap_area(theta) - a| <= 1e-10.
double theta_for_area(const MetricState& state, double a);
double theta_for_area(const CapTable& table, double a);

std::vector<IsoProfilePoint> latitude_profile(const MetricState& state,
                                              std::span<const double> a_grid);

// (4pi a - kappa a^2) / (4pi a - a^2). May be <= 0 for a >= 4pi/kappa; such
// values are vacuous bounds, not errors.
double cf_lower_bound(double a, double kappa);

struct CfViolation {
  std::size_t index = 0;
  double a = 0.0;
  double length_sq = 0.0;
  double bound = 0.0;
  double deficit = 0.0;  // bound - length_sq, positive when violated
};

// Flag profile points with L^2 < 4pi a - kappa a^2 - tol; kappa is taken
// from curvature(state).
std::vector<CfViolation> cf_check(const MetricState& state,
                                  std::span<const IsoProfilePoint> profile,
                                  double tol = 1e-8);

// sqrt(4pi a) - kappa a^{3/2} / (4 sqrt(pi)); small-cap expansion of the
// length bound, accurate to O(a^{5/2}).
double small_a_expansion(double a, double kappa);

// Residual of the profile evolution identity at the saved time nearest t:
//   d/dt ln I^2 - d^2/dr^2 ln I^2 - B(a) (1 - I^2)
// with the time derivative across adjacent saved records and the spatial
// derivative over three neighboring latitude circles. t must lie strictly
// inside the saved time range.
double hamilton_residual(const FlowTrajectory& traj, double a, double t);

}  // namespace sphereflow
