#pragma once

#include <vector>

namespace sphereflow {

// One output row per saved flow time. The per-area vectors run parallel to
// the trajectory's a_grid.
struct TimeSeriesRecord {
  double t = 0.0;
  double kappa = 0.0;
  double k_min = 0.0;
  double area = 0.0;
  double gauss_bonnet = 0.0;
  std::vector<double> ratio_sq;       // I^2 along the latitude family
  std::vector<double> sigmoid_bound;  // logistic comparison value at t
  std::vector<double> cf_bound;       // (4pi a - kappa a^2)/(4pi a - a^2)
  std::vector<double> residual;       // profile evolution-equation residual
  double decay_bound = 0.0;           // (kappa(0) - 1) e^{-2t}
};

}  // namespace sphereflow
