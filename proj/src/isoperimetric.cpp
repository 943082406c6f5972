#include "sphereflow/isoperimetric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphereflow/bounds.hpp"

namespace sphereflow {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

IsoProfilePoint profile_point(const CapTable& table, double a) {
  IsoProfilePoint p;
  p.a = a;
  p.theta = theta_for_area(table, a);
  p.length = table.cap_length(p.theta);
  p.round_length = round_length(a);
  p.ratio_sq = (p.length * p.length) / (p.round_length * p.round_length);
  p.r = table.radius(p.theta);
  return p;
}

double log_ratio_sq_at_theta(const CapTable& table, double theta) {
  const double a = table.cap_area(theta);
  const double len = table.cap_length(theta);
  return std::log(len * len / (a * (kFourPi - a)));
}

}  // namespace

double round_length(double a) {
  if (!(a > 0.0 && a < kFourPi))
    throw std::invalid_argument("enclosed area must lie in (0, 4pi)");
  return std::sqrt(a * (kFourPi - a));
}

double theta_for_area(const CapTable& table, double a) {
  if (!(a > 0.0 && a < table.total_area()))
    throw std::invalid_argument("enclosed area outside (0, total area)");
  double lo = 0.0;
  double hi = M_PI;
  // cap_area is strictly increasing; bisect until the bracket collapses.
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (table.cap_area(mid) < a ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double theta_for_area(const MetricState& state, double a) {
  return theta_for_area(CapTable(state), a);
}

std::vector<IsoProfilePoint> latitude_profile(const MetricState& state,
                                              std::span<const double> a_grid) {
  const CapTable table(state);
  std::vector<IsoProfilePoint> out;
  out.reserve(a_grid.size());
  for (double a : a_grid) out.push_back(profile_point(table, a));
  return out;
}

double cf_lower_bound(double a, double kappa) {
  if (!(a > 0.0 && a < kFourPi))
    throw std::invalid_argument("enclosed area must lie in (0, 4pi)");
  return (kFourPi - kappa * a) / (kFourPi - a);
}

std::vector<CfViolation> cf_check(const MetricState& state,
                                  std::span<const IsoProfilePoint> profile,
                                  double tol) {
  const double kappa = curvature(state).kappa;
  std::vector<CfViolation> violations;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto& p = profile[i];
    const double length_sq = p.length * p.length;
    const double bound = kFourPi * p.a - kappa * p.a * p.a;
    if (length_sq < bound - tol)
      violations.push_back({i, p.a, length_sq, bound, bound - length_sq});
  }
  return violations;
}

double small_a_expansion(double a, double kappa) {
  if (!(a > 0.0)) throw std::invalid_argument("area must be positive");
  if (kappa > 0.0 && !(a < kFourPi / kappa))
    throw std::invalid_argument("area must lie below 4pi/kappa");
  return std::sqrt(kFourPi * a) -
         kappa * a * std::sqrt(a) / (4.0 * std::sqrt(M_PI));
}

double hamilton_residual(const FlowTrajectory& traj, double a, double t) {
  const auto& records = traj.records;
  if (records.size() < 3)
    throw std::invalid_argument("need at least three saved records");
  if (!(t > records.front().t && t < records.back().t))
    throw std::invalid_argument(
        "time must lie strictly inside the saved range");
  if (!(a > 0.0 && a < kFourPi))
    throw std::invalid_argument("enclosed area must lie in (0, 4pi)");

  // nearest interior record
  std::size_t j = 1;
  for (std::size_t i = 2; i + 1 < records.size(); ++i)
    if (std::abs(records[i].t - t) < std::abs(records[j].t - t)) j = i;

  const CapTable prev(traj.states[j - 1]);
  const CapTable here(traj.states[j]);
  const CapTable next(traj.states[j + 1]);

  const double ln_prev = std::log(profile_point(prev, a).ratio_sq);
  const double ln_next = std::log(profile_point(next, a).ratio_sq);
  const double dt_ln =
      (ln_next - ln_prev) / (records[j + 1].t - records[j - 1].t);

  const IsoProfilePoint center = profile_point(here, a);
  const double theta0 = center.theta;
  const double h = traj.grid->h;
  const double d = std::min({h, 0.5 * theta0, 0.5 * (M_PI - theta0)});

  const double r0 = here.radius(theta0 - d);
  const double r1 = center.r;
  const double r2 = here.radius(theta0 + d);
  const double f0 = log_ratio_sq_at_theta(here, theta0 - d);
  const double f1 = std::log(center.ratio_sq);
  const double f2 = log_ratio_sq_at_theta(here, theta0 + d);
  // second derivative on the nonuniform three-point stencil
  const double d2r = 2.0 *
                     (f0 * (r2 - r1) - f1 * (r2 - r0) + f2 * (r1 - r0)) /
                     ((r1 - r0) * (r2 - r1) * (r2 - r0));

  return dt_ln - d2r - b_coefficient(a) * (1.0 - center.ratio_sq);
}

}  // namespace sphereflow
