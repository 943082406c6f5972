#pragma once

#include <string>

#include "sphereflow/flow.hpp"

namespace sphereflow {

struct DecayFit {
  bool valid = false;
  double rate = 0.0;       // decay rate of kappa - 1, i.e. minus the slope
  double r_squared = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  int points = 0;
  std::string note;
};

// Least-squares slope of ln(kappa - 1) over saved times in [lo, hi].
DecayFit fit_decay_rate(const FlowTrajectory& traj, double window_lo,
                        double window_hi);

// The full time series as CSV: header, one row per record, every float
// printed with 17 significant digits.
std::string series_csv(const FlowTrajectory& traj);

}  // namespace sphereflow
