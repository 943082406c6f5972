#include "trajectory_cache.hpp"

#include <cmath>
#include <memory>

namespace sphereflow::testing {

const FlowTrajectory& l2_trajectory() {
  static const FlowTrajectory traj = [] {
    FlowConfig cfg;
    cfg.n = 256;
    cfg.t_end = 3.0;
    cfg.initial.kind = InitialKind::L2;
    cfg.initial.amplitude = 0.05;
    return run(cfg);
  }();
  return traj;
}

const FlowTrajectory& round_trajectory() {
  static const FlowTrajectory traj = [] {
    FlowConfig cfg;
    cfg.n = 256;
    cfg.t_end = 1.0;
    return run(cfg);
  }();
  return traj;
}

MetricState make_metric(int n, double (*f)(double), double amplitude) {
  auto grid = std::make_shared<const LatitudeGrid>(build_grid(n));
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = amplitude * f(grid->theta[i]);
  return {grid, std::move(u), 0.0};
}

double legendre2_cos(double theta) {
  const double x = std::cos(theta);
  return 0.5 * (3.0 * x * x - 1.0);
}

double legendre3_cos(double theta) {
  const double x = std::cos(theta);
  return 0.5 * (5.0 * x * x * x - 3.0 * x);
}

}  // namespace sphereflow::testing
