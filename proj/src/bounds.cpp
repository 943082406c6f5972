#include "sphereflow/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sphereflow {

namespace {

constexpr double kFourPi = 4.0 * M_PI;
constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kRoundKappaEps = 1e-8;

std::size_t a_grid_index(const FlowTrajectory& traj, double a) {
  for (std::size_t i = 0; i < traj.a_grid.size(); ++i)
    if (std::abs(traj.a_grid[i] - a) <= 1e-12) return i;
  throw std::invalid_argument(
      "area is not on the trajectory's profile grid");
}

}  // namespace

double b_coefficient(double a) {
  if (!(a > 0.0 && a < kFourPi))
    throw std::invalid_argument("area must lie in (0, 4pi)");
  const double d = 2.0 * (a - kTwoPi);
  return 2.0 + d * d / (a * (kFourPi - a));
}

ComparisonParams comparison_params(double a, double c) {
  return {a, b_coefficient(a), c};
}

double comparison_solution(const ComparisonParams& params, double t) {
  return 1.0 / (1.0 + std::exp(-params.b * t - params.c));
}

double c_from_initial(double i_sq_0) {
  if (!(i_sq_0 > 0.0 && i_sq_0 <= 1.0))
    throw std::invalid_argument("initial ratio must lie in (0, 1]");
  if (i_sq_0 == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log(1.0 / i_sq_0 - 1.0);
}

double c_from_kappa(double a, double kappa0) {
  if (!(kappa0 > 1.0))
    throw std::invalid_argument("kappa0 must exceed 1");
  if (!(a > 0.0 && a < kFourPi / kappa0))
    throw std::invalid_argument("area must lie in (0, 4pi/kappa0)");
  return -std::log((kappa0 - 1.0) * a / (kFourPi - kappa0 * a));
}

BoundReport sigmoid_bound_check(const FlowTrajectory& traj, double a,
                                double tol) {
  const std::size_t ai = a_grid_index(traj, a);
  if (traj.records.empty())
    throw std::invalid_argument("trajectory has no records");

  const double i_sq_0 = std::min(traj.records.front().ratio_sq[ai], 1.0);
  const ComparisonParams params = comparison_params(a, c_from_initial(i_sq_0));

  BoundReport report;
  report.kind = BoundKind::Sigmoid;
  report.max_deficit = std::numeric_limits<double>::infinity();
  for (const auto& rec : traj.records) {
    const double measured = rec.ratio_sq[ai];
    const double bound = comparison_solution(params, rec.t);
    report.max_deficit = std::min(report.max_deficit, measured - bound);
    if (measured < bound - tol)
      report.violations.push_back({rec.t, measured, bound});
  }
  return report;
}

BoundReport kappa_decay_check(const FlowTrajectory& traj, double tol) {
  if (traj.records.empty())
    throw std::invalid_argument("trajectory has no records");
  const double kappa0 = traj.records.front().kappa;
  if (kappa0 <= 1.0 + kRoundKappaEps)
    throw std::invalid_argument(
        "decay bound is vacuous for round initial data");

  BoundReport report;
  report.kind = BoundKind::KappaDecay;
  report.max_deficit = std::numeric_limits<double>::infinity();
  for (const auto& rec : traj.records) {
    const double bound = (kappa0 - 1.0) * std::exp(-2.0 * rec.t);
    const double margin = bound - (rec.kappa - 1.0);
    report.max_deficit = std::min(report.max_deficit, margin);
    if (rec.kappa - 1.0 > bound * (1.0 + tol))
      report.violations.push_back({rec.t, rec.kappa - 1.0, bound});
  }
  return report;
}

double contradiction_inequality(double a, double t_cap, double kappa0,
                                double kappa_t) {
  if (!(kappa0 > 1.0))
    throw std::invalid_argument("kappa0 must exceed 1");
  if (!(a > 0.0 && a < kFourPi / std::max(kappa0, kappa_t)))
    throw std::invalid_argument("area must lie in (0, 4pi/max(kappa))");
  return std::exp(-b_coefficient(a) * t_cap) * (kFourPi - kappa_t * a) /
             (kFourPi - kappa0 * a) -
         (kappa_t - 1.0) / (kappa0 - 1.0);
}

}  // namespace sphereflow
