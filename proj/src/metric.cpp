#include "sphereflow/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphereflow/kernels.hpp"

namespace sphereflow {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

void check_state(const MetricState& s) {
  if (!s.grid) throw std::invalid_argument("metric state has no grid");
  if (s.u.size() != static_cast<std::size_t>(s.grid->n))
    throw std::invalid_argument("conformal factor size does not match grid");
}

}  // namespace

MetricState make_state(std::shared_ptr<const LatitudeGrid> grid,
                       std::vector<double> u, double t) {
  MetricState s{std::move(grid), std::move(u), t};
  check_state(s);
  return s;
}

void curvature_values(const MetricState& state, double* out) {
  const LatitudeGrid& g = *state.grid;
  const double inv_h2 = 1.0 / (g.h * g.h);
  const double inv_2h = 1.0 / (2.0 * g.h);
  kernels::gaussian_curvature(state.u.data(), g.cot_theta.data(),
                              static_cast<std::size_t>(g.n), inv_h2, inv_2h,
                              out);
}

CurvatureField curvature(const MetricState& state) {
  check_state(state);
  const LatitudeGrid& g = *state.grid;
  const auto n = static_cast<std::size_t>(g.n);

  CurvatureField f;
  f.k.resize(n);
  curvature_values(state, f.k.data());
  f.kappa = kernels::max_value(f.k.data(), n);
  f.k_min = kernels::min_value(f.k.data(), n);

  std::vector<double> e2u(n);
  kernels::exp_scale(state.u.data(), n, 2.0, e2u.data());
  f.gb = 2.0 * M_PI *
         kernels::triple_dot(g.cell_weight.data(), e2u.data(), f.k.data(), n);
  return f;
}

double total_area(const MetricState& state) {
  check_state(state);
  const LatitudeGrid& g = *state.grid;
  return 2.0 * M_PI *
         kernels::weighted_exp2_sum(state.u.data(), g.cell_weight.data(),
                                    static_cast<std::size_t>(g.n));
}

MetricState project_area(const MetricState& state) {
  const double area = total_area(state);
  if (!(area > 0.0))
    throw std::invalid_argument("total area must be positive");
  MetricState out = state;
  const double c = 0.5 * std::log(area / kFourPi);
  kernels::shift(out.u.data(), out.u.size(), -c);
  return out;
}

double cap_area(const MetricState& state, double theta) {
  return CapTable(state).cap_area(theta);
}

double cap_length(const MetricState& state, double theta) {
  return CapTable(state).cap_length(theta);
}

CapTable::CapTable(const MetricState& state)
    : grid_(state.grid), u_(state.u) {
  check_state(state);
  const auto n = static_cast<std::size_t>(grid_->n);
  exp2u_.resize(n);
  expu_.resize(n);
  kernels::exp_scale(u_.data(), n, 2.0, exp2u_.data());
  kernels::exp_scale(u_.data(), n, 1.0, expu_.data());
  cum_.resize(n + 1);
  cum_r_.resize(n + 1);
  cum_[0] = 0.0;
  cum_r_[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cum_[i + 1] = cum_[i] + grid_->cell_weight[i] * exp2u_[i];
    cum_r_[i + 1] = cum_r_[i] + expu_[i] * grid_->h;
  }
  total_ = 2.0 * M_PI * cum_[n];
}

double CapTable::cap_area(double theta) const {
  if (theta < 0.0 || theta > M_PI)
    throw std::invalid_argument("cap colatitude must lie in [0, pi]");
  const int n = grid_->n;
  const int j = std::min(static_cast<int>(theta / grid_->h), n - 1);
  // partial cell: integrate sin exactly against the midpoint sample of e^2u
  const double partial =
      exp2u_[j] * (grid_->cos_face[j] - std::cos(theta));
  return 2.0 * M_PI * (cum_[j] + partial);
}

double CapTable::radius(double theta) const {
  if (theta < 0.0 || theta > M_PI)
    throw std::invalid_argument("colatitude must lie in [0, pi]");
  const int n = grid_->n;
  const int j = std::min(static_cast<int>(theta / grid_->h), n - 1);
  return cum_r_[j] + expu_[j] * (theta - j * grid_->h);
}

double CapTable::u_at(double theta) const {
  const int n = grid_->n;
  const double x = theta / grid_->h - 0.5;
  if (x <= 0.0) return u_[0];
  if (x >= n - 1) return u_[n - 1];
  const int j = static_cast<int>(x);
  const double f = x - j;
  return u_[j] * (1.0 - f) + u_[j + 1] * f;
}

double CapTable::cap_length(double theta) const {
  if (!(theta > 0.0 && theta < M_PI))
    throw std::invalid_argument(
        "latitude circle degenerates at the poles; need theta in (0, pi)");
  return 2.0 * M_PI * std::exp(u_at(theta)) * std::sin(theta);
}

}  // namespace sphereflow
