#pragma once

#include <vector>

#include "sphereflow/flow.hpp"

namespace sphereflow {

// Parameters of the logistic comparison solution f(t) = 1/(1 + e^{-bt-c}).
struct ComparisonParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// B(a) = (a^2 + (4pi-a)^2) / (a (4pi-a)), evaluated as
// 2 + (2(a-2pi))^2 / (a (4pi-a)) so B >= 2 holds exactly in floating point.
double b_coefficient(double a);

ComparisonParams comparison_params(double a, double c);

// f(t), increasing from f(0) = 1/(1+e^{-c}) toward 1. c = +inf means f == 1.
double comparison_solution(const ComparisonParams& params, double t);

// c with f(0) = i_sq_0; requires i_sq_0 in (0, 1], returns +inf at 1.
double c_from_initial(double i_sq_0);

// c with f(0) equal to the curvature-based profile bound at a:
// e^{-c} = (kappa0 - 1) a / (4pi - kappa0 a). Requires kappa0 > 1 and
// a < 4pi/kappa0.
double c_from_kappa(double a, double kappa0);

enum class BoundKind { Sigmoid, KappaDecay, Contradiction };

struct BoundViolation {
  double t = 0.0;
  double measured = 0.0;
  double bound = 0.0;
};

struct BoundReport {
  BoundKind kind = BoundKind::Sigmoid;
  std::vector<BoundViolation> violations;  // sorted by t
  double max_deficit = 0.0;  // worst signed margin, min_t (measured - bound)
};

// Check I^2(t) >= f(t) - tol at every saved record, with c matched to the
// recorded I^2(0) at this a. a must be one of the trajectory's a_grid values.
BoundReport sigmoid_bound_check(const FlowTrajectory& traj, double a,
                                double tol = 1e-4);

// Check kappa(t) - 1 <= (kappa(0) - 1) e^{-2t} (1 + tol) at every record.
// Throws std::invalid_argument for round initial data (kappa(0) <= 1 + 1e-8).
BoundReport kappa_decay_check(const FlowTrajectory& traj, double tol = 1e-4);

// Signed slack of the rearranged decay inequality:
//   e^{-B(a) t} (4pi - kappa_t a)/(4pi - kappa0 a) - (kappa_t - 1)/(kappa0 - 1).
// Requires kappa0 > 1 and a in (0, 4pi/max(kappa0, kappa_t)).
double contradiction_inequality(double a, double t_cap, double kappa0,
                                double kappa_t);

}  // namespace sphereflow
