#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphereflow/metric.hpp"
#include "sphereflow/record.hpp"

namespace sphereflow {

enum class InitialKind { Round, L2, L3, Cos, Custom };

struct InitialCondition {
  InitialKind kind = InitialKind::Round;
  double amplitude = 0.05;
  std::vector<double> custom_u;  // used when kind == Custom; size must be n
  std::string custom_path;       // where custom_u came from, if a file
};

struct FlowConfig {
  int n = 256;
  std::optional<double> dt;       // absent: CFL-limited automatic step
  double t_end = 3.0;
  std::optional<int> save_every;  // absent: aim for ~200 records
  InitialCondition initial;
  double cfl_safety = 0.2;
  std::vector<double> a_grid;     // empty: default_a_grid()
};

struct FlowTrajectory {
  std::shared_ptr<const LatitudeGrid> grid;
  std::vector<MetricState> states;        // saved states, times increasing
  std::vector<TimeSeriesRecord> records;  // parallel to states
  std::vector<double> a_grid;
};

class FlowDivergenceError : public std::runtime_error {
 public:
  explicit FlowDivergenceError(double t)
      : std::runtime_error("flow diverged at t = " + std::to_string(t)),
        t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

// du/dt = 1 - K, the conformal-gauge form of the normalized flow.
std::vector<double> rhs(const MetricState& state);

// Parabolic stability limit: cfl_safety * h^2 * min_i exp(2 u_i).
double stable_dt(const MetricState& state, double cfl_safety);

// One classical RK4 step followed by area projection. Throws
// FlowDivergenceError if any |u_i| exceeds 50 (or goes non-finite).
MetricState step(const MetricState& state, double dt);

// Integrate from the (area-projected) initial state to t >= t_end, saving
// states and fully populated records on the configured cadence.
FlowTrajectory run(const FlowConfig& config);

// Sample the initial condition on the grid nodes.
std::vector<double> initial_values(const LatitudeGrid& grid,
                                   const InitialCondition& ic);

// 33 profile areas: 30 evenly spaced over [0.1, 4pi - 0.1] plus pi, 2pi, 3pi.
std::vector<double> default_a_grid();

}  // namespace sphereflow
