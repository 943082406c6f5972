#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphereflow/flow.hpp"
#include "sphereflow/manifest.hpp"
#include "sphereflow/report.hpp"

namespace sphereflow {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSeriesFormat = 1;

// Saved-state area tolerance; the projection holds this to round-off.
inline constexpr double kAreaTol = 1e-12;

struct CheckSummary {
  bool pass = true;
  bool vacuous = false;   // check had nothing to say (e.g. round decay)
  double worst_margin = 0.0;
  std::size_t violations = 0;
};

struct BatteryResult {
  CheckSummary area;
  CheckSummary gauss_bonnet;
  CheckSummary chavel_feldman;
  CheckSummary sigmoid;
  CheckSummary kappa_decay;
  std::vector<double> sigmoid_gate_areas;
  DecayFit decay_fit;
  bool all_pass() const;
};

// Run every inequality check against a finished trajectory. The sigmoid
// comparison gates the verdict at the areas pi, 2pi, 3pi (where the bound
// transfer is meaningful); per-area bound values for the whole grid are in
// the records either way.
BatteryResult evaluate_battery(const FlowTrajectory& traj,
                               const RunManifest& manifest);

nlohmann::json summary_json(const FlowTrajectory& traj,
                            const RunManifest& manifest,
                            const BatteryResult& battery);

FlowConfig resolved_config(const RunManifest& manifest);

// Exit codes: 0 all checks pass, 1 bound violation, 2 divergence.
int simulate_command(const RunManifest& manifest);

// Grid-refinement study: reruns the manifest at each n and reports observed
// convergence orders for kappa(t_end) and the curvature integral error.
// Exit 0 iff both orders reach 1.8 (or sit at the round-off floor).
int convergence_command(const RunManifest& manifest,
                        const std::vector<int>& grids);

// Compare the curve-search minimum against the latitude circle at (a, t).
// Exit 0 iff the search finds nothing shorter than 0.98x the latitude value.
int oracle_command(const RunManifest& manifest, double a, double t);

}  // namespace sphereflow
