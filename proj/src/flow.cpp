#include "sphereflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphereflow/bounds.hpp"
#include "sphereflow/isoperimetric.hpp"
#include "sphereflow/kernels.hpp"

namespace sphereflow {

namespace {

constexpr double kFourPi = 4.0 * M_PI;
constexpr double kBlowupLimit = 50.0;
constexpr int kTargetRecords = 200;

double legendre2(double x) { return 0.5 * (3.0 * x * x - 1.0); }
double legendre3(double x) { return 0.5 * (5.0 * x * x * x - 3.0 * x); }

void rhs_into(const MetricState& state, std::vector<double>& out) {
  out.resize(state.u.size());
  curvature_values(state, out.data());
  for (double& v : out) v = 1.0 - v;
}

std::vector<double> validated_a_grid(std::vector<double> a_grid) {
  if (a_grid.empty()) return default_a_grid();
  std::sort(a_grid.begin(), a_grid.end());
  a_grid.erase(std::unique(a_grid.begin(), a_grid.end()), a_grid.end());
  for (double a : a_grid)
    if (!(a > 0.0 && a < kFourPi))
      throw std::invalid_argument("profile areas must lie in (0, 4pi)");
  return a_grid;
}

// Per-area state shared by all records of one run.
struct RecordBuilder {
  std::vector<double> a_grid;
  std::vector<double> i_sq_0;  // I^2 at t = 0 per area
  std::vector<ComparisonParams> params;
  double kappa0 = 0.0;
  bool have_first = false;

  TimeSeriesRecord build(const MetricState& state) {
    TimeSeriesRecord rec;
    rec.t = state.t;
    const CurvatureField cf = curvature(state);
    rec.kappa = cf.kappa;
    rec.k_min = cf.k_min;
    rec.area = total_area(state);
    rec.gauss_bonnet = cf.gb;

    const auto profile = latitude_profile(state, a_grid);
    rec.ratio_sq.reserve(profile.size());
    for (const auto& p : profile) rec.ratio_sq.push_back(p.ratio_sq);

    if (!have_first) {
      have_first = true;
      kappa0 = cf.kappa;
      i_sq_0 = rec.ratio_sq;
      params.reserve(a_grid.size());
      for (std::size_t i = 0; i < a_grid.size(); ++i) {
        const double c = c_from_initial(std::min(i_sq_0[i], 1.0));
        params.push_back(comparison_params(a_grid[i], c));
      }
    }

    rec.sigmoid_bound.reserve(a_grid.size());
    rec.cf_bound.reserve(a_grid.size());
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
      rec.sigmoid_bound.push_back(comparison_solution(params[i], state.t));
      rec.cf_bound.push_back(cf_lower_bound(a_grid[i], cf.kappa));
    }
    rec.residual.assign(a_grid.size(), 0.0);
    rec.decay_bound = (kappa0 - 1.0) * std::exp(-2.0 * state.t);
    return rec;
  }
};

// Centered-difference residuals for the interior records; the first and
// last rows take the nearest interior value so every field stays finite.
void fill_residuals(FlowTrajectory& traj) {
  const std::size_t m = traj.records.size();
  if (m < 3) return;
  for (std::size_t j = 1; j + 1 < m; ++j) {
    for (std::size_t i = 0; i < traj.a_grid.size(); ++i)
      traj.records[j].residual[i] =
          hamilton_residual(traj, traj.a_grid[i], traj.records[j].t);
  }
  traj.records.front().residual = traj.records[1].residual;
  traj.records.back().residual = traj.records[m - 2].residual;
}

}  // namespace

std::vector<double> rhs(const MetricState& state) {
  std::vector<double> out;
  rhs_into(state, out);
  return out;
}

double stable_dt(const MetricState& state, double cfl_safety) {
  const double umin = kernels::min_value(state.u.data(), state.u.size());
  return cfl_safety * state.grid->h * state.grid->h * std::exp(2.0 * umin);
}

MetricState step(const MetricState& state, double dt) {
  const auto n = state.u.size();
  std::vector<double> k1, k2, k3, k4, y(n), u_new(n);

  rhs_into(state, k1);
  kernels::axpby(state.u.data(), k1.data(), n, 0.5 * dt, y.data());
  rhs_into({state.grid, y, state.t + 0.5 * dt}, k2);
  kernels::axpby(state.u.data(), k2.data(), n, 0.5 * dt, y.data());
  rhs_into({state.grid, y, state.t + 0.5 * dt}, k3);
  kernels::axpby(state.u.data(), k3.data(), n, dt, y.data());
  rhs_into({state.grid, y, state.t + dt}, k4);
  kernels::rk4_combine(state.u.data(), k1.data(), k2.data(), k3.data(),
                       k4.data(), n, dt, u_new.data());

  // NaN fails the <= comparison too, so this also traps non-finite values.
  if (!(kernels::max_abs(u_new.data(), n) <= kBlowupLimit))
    throw FlowDivergenceError(state.t);

  return project_area({state.grid, std::move(u_new), state.t + dt});
}

FlowTrajectory run(const FlowConfig& config) {
  if (!(config.t_end > 0.0))
    throw std::invalid_argument("t_end must be positive");
  if (!(config.cfl_safety > 0.0 && config.cfl_safety < 1.0))
    throw std::invalid_argument("cfl_safety must lie in (0, 1)");
  if (config.save_every && *config.save_every < 1)
    throw std::invalid_argument("save_every must be >= 1");
  if (config.dt && !(*config.dt > 0.0))
    throw std::invalid_argument("dt must be positive");

  auto grid = std::make_shared<const LatitudeGrid>(build_grid(config.n));
  MetricState state =
      project_area({grid, initial_values(*grid, config.initial), 0.0});

  const double dt0 =
      config.dt ? *config.dt : stable_dt(state, config.cfl_safety);
  long save_every = 1;
  if (config.save_every) {
    save_every = *config.save_every;
  } else {
    const double total_steps = std::ceil(config.t_end / dt0);
    save_every = std::max(1L, std::lround(total_steps / kTargetRecords));
  }

  FlowTrajectory traj;
  traj.grid = grid;
  traj.a_grid = validated_a_grid(config.a_grid);

  RecordBuilder builder;
  builder.a_grid = traj.a_grid;
  traj.states.push_back(state);
  traj.records.push_back(builder.build(state));

  long steps = 0;
  while (state.t < config.t_end) {
    double dt = config.dt ? *config.dt : stable_dt(state, config.cfl_safety);
    const double remaining = config.t_end - state.t;
    const bool last = dt >= remaining;
    if (last) dt = remaining;
    state = step(state, dt);
    if (last) state.t = config.t_end;  // land exactly on the final time
    ++steps;
    if (steps % save_every == 0 || state.t >= config.t_end) {
      traj.states.push_back(state);
      traj.records.push_back(builder.build(state));
    }
  }

  fill_residuals(traj);
  return traj;
}

std::vector<double> initial_values(const LatitudeGrid& grid,
                                   const InitialCondition& ic) {
  const auto n = static_cast<std::size_t>(grid.n);
  std::vector<double> u(n, 0.0);
  switch (ic.kind) {
    case InitialKind::Round:
      break;
    case InitialKind::L2:
      for (std::size_t i = 0; i < n; ++i)
        u[i] = ic.amplitude * legendre2(std::cos(grid.theta[i]));
      break;
    case InitialKind::L3:
      for (std::size_t i = 0; i < n; ++i)
        u[i] = ic.amplitude * legendre3(std::cos(grid.theta[i]));
      break;
    case InitialKind::Cos:
      for (std::size_t i = 0; i < n; ++i)
        u[i] = ic.amplitude * std::cos(grid.theta[i]);
      break;
    case InitialKind::Custom:
      if (ic.custom_u.size() != n)
        throw std::invalid_argument(
            "custom initial condition has " +
            std::to_string(ic.custom_u.size()) + " values, grid needs " +
            std::to_string(n));
      u = ic.custom_u;
      break;
  }
  for (double v : u)
    if (!std::isfinite(v))
      throw std::invalid_argument("initial condition must be finite");
  return u;
}

std::vector<double> default_a_grid() {
  std::vector<double> a;
  const double lo = 0.1;
  const double hi = kFourPi - 0.1;
  for (int i = 0; i < 30; ++i) a.push_back(lo + (hi - lo) * i / 29.0);
  a.push_back(M_PI);
  a.push_back(2.0 * M_PI);
  a.push_back(3.0 * M_PI);
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace sphereflow
