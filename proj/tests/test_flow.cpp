#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "sphereflow/flow.hpp"
#include "trajectory_cache.hpp"

using namespace sphereflow;
using sphereflow::testing::make_metric;

namespace {

constexpr double kFourPi = 4.0 * M_PI;

MetricState constant_state(int n, double c) {
  auto grid = std::make_shared<const LatitudeGrid>(build_grid(n));
  return {grid, std::vector<double>(n, c), 0.0};
}

double cos_theta(double theta) { return std::cos(theta); }

double linear_fit_slope(const FlowTrajectory& traj, double lo, double hi) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  int m = 0;
  for (const auto& rec : traj.records) {
    if (rec.t < lo || rec.t > hi) continue;
    const double y = std::log(rec.kappa - 1.0);
    st += rec.t;
    sy += y;
    stt += rec.t * rec.t;
    sty += rec.t * y;
    ++m;
  }
  return (m * sty - st * sy) / (m * stt - st * st);
}

}  // namespace

TEST_CASE("rhs vanishes identically on the round sphere") {
  const auto r = rhs(constant_state(256, 0.0));
  for (double v : r) CHECK(v == 0.0);
}

TEST_CASE("rhs of a constant conformal factor") {
  const double c = 0.12;
  const auto r = rhs(constant_state(64, c));
  const double expect = 1.0 - std::exp(-2.0 * c);
  for (double v : r) CHECK(v == doctest::Approx(expect).epsilon(5e-15));
}

TEST_CASE("rhs of the tilt mode is second order in the amplitude") {
  // the l = 1 mode is neutral at linear order, so rhs = O(eps^2)
  double max_at[2];
  int idx = 0;
  for (double eps : {0.05, 0.025}) {
    const auto r = rhs(make_metric(256, cos_theta, eps));
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, std::abs(v));
    max_at[idx++] = worst;
  }
  CHECK(max_at[0] <= 5 * 0.05 * 0.05);
  const double ratio = max_at[0] / max_at[1];
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("stable time step follows the parabolic formula") {
  const MetricState round256 = constant_state(256, 0.0);
  const double h256 = M_PI / 256;
  CHECK(stable_dt(round256, 0.2) ==
        doctest::Approx(0.2 * h256 * h256).epsilon(1e-14));

  const MetricState round512 = constant_state(512, 0.0);
  CHECK(stable_dt(round512, 0.2) ==
        doctest::Approx(0.25 * stable_dt(round256, 0.2)).epsilon(1e-14));

  MetricState dip = round256;
  dip.u[100] = -0.1;
  CHECK(stable_dt(dip, 0.2) ==
        doctest::Approx(0.2 * h256 * h256 * std::exp(-0.2)).epsilon(1e-14));
}

TEST_CASE("round sphere is a fixed point of the stepper") {
  MetricState s = project_area(constant_state(256, 0.0));
  const double dt = stable_dt(s, 0.2);
  for (int i = 0; i < 100; ++i) s = step(s, dt);
  for (double v : s.u) CHECK(std::abs(v) < 1e-12);
  CHECK(std::abs(total_area(s) - kFourPi) < 1e-12);
}

TEST_CASE("stepper commutes with reflection") {
  MetricState s = make_metric(64, sphereflow::testing::legendre2_cos, 0.05);
  for (int i = 0; i < 32; ++i) s.u[63 - i] = s.u[i];
  s = project_area(s);
  const MetricState next = step(s, stable_dt(s, 0.2));
  for (int i = 0; i < 32; ++i) CHECK(next.u[i] == next.u[63 - i]);
}

TEST_CASE("divergence guard trips on an oversized step") {
  MetricState s =
      project_area(make_metric(64, sphereflow::testing::legendre2_cos, 2.0));
  const double dt = 100.0 * stable_dt(s, 0.2);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 5000; ++i) s = step(s, dt);
      }(),
      FlowDivergenceError);
}

TEST_CASE("run keeps the round metric round") {
  const FlowTrajectory& traj = sphereflow::testing::round_trajectory();
  for (const auto& rec : traj.records) {
    CHECK(std::abs(rec.kappa - 1.0) <= 1e-10);
    CHECK(std::abs(rec.area - kFourPi) <= 1e-12);
  }
  CHECK(traj.records.back().t >= 1.0);
}

TEST_CASE("perturbed run relaxes at the linearized rate") {
  const FlowTrajectory& traj = sphereflow::testing::l2_trajectory();

  // times strictly increasing from zero
  CHECK(traj.records.front().t == 0.0);
  for (std::size_t i = 1; i < traj.records.size(); ++i)
    CHECK(traj.records[i].t > traj.records[i - 1].t);

  // area projected at every save
  for (const auto& rec : traj.records)
    CHECK(std::abs(rec.area - kFourPi) <= 1e-12);

  // curvature integral holds its initial accuracy along the flow
  const double gb0 = std::abs(traj.records.front().gauss_bonnet - kFourPi);
  for (const auto& rec : traj.records)
    CHECK(std::abs(rec.gauss_bonnet - kFourPi) <=
          std::max(2.0 * gb0, 1e-12));

  // sup|u| decays monotonically between saves
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    double prev = 0.0, cur = 0.0;
    for (double v : traj.states[i - 1].u) prev = std::max(prev, std::abs(v));
    for (double v : traj.states[i].u) cur = std::max(cur, std::abs(v));
    CHECK(cur < prev);
  }

  // decay bound with 1% slack at every saved time
  const double k0 = traj.records.front().kappa;
  CHECK(k0 > 1.0);
  for (const auto& rec : traj.records)
    CHECK(rec.kappa - 1.0 <=
          (k0 - 1.0) * std::exp(-2.0 * rec.t) * (1.0 + 1e-2));

  // fitted decay rate of ln(kappa-1) near the linearized value 4
  const double slope = linear_fit_slope(traj, 1.0, 3.0);
  CHECK(-slope > 3.6);
  CHECK(-slope < 4.4);
}

TEST_CASE("kappa at fixed time converges at second order") {
  double kappa_end[3];
  int idx = 0;
  for (int n : {64, 128, 256}) {
    FlowConfig cfg;
    cfg.n = n;
    cfg.t_end = 1.0;
    cfg.initial.kind = InitialKind::L2;
    cfg.initial.amplitude = 0.05;
    cfg.a_grid = {2 * M_PI};
    kappa_end[idx++] = run(cfg).records.back().kappa;
  }
  const double d1 = std::abs(kappa_end[1] - kappa_end[0]);
  const double d2 = std::abs(kappa_end[2] - kappa_end[1]);
  CHECK(std::log2(d1 / d2) > 1.8);
}

TEST_CASE("initial conditions populate the grid") {
  const LatitudeGrid grid = build_grid(64);
  InitialCondition ic;
  ic.kind = InitialKind::L3;
  ic.amplitude = 0.1;
  const auto u = initial_values(grid, ic);
  CHECK(u.size() == 64);
  CHECK(u[0] ==
        doctest::Approx(
            0.1 * sphereflow::testing::legendre3_cos(grid.theta[0])));

  ic.kind = InitialKind::Custom;
  ic.custom_u = std::vector<double>(32, 0.0);
  CHECK_THROWS_AS(initial_values(grid, ic), std::invalid_argument);
  ic.custom_u = std::vector<double>(64, 0.5);
  CHECK(initial_values(grid, ic)[10] == 0.5);
  ic.custom_u[3] = std::nan("");
  CHECK_THROWS_AS(initial_values(grid, ic), std::invalid_argument);
}

TEST_CASE("run validates its configuration") {
  FlowConfig cfg;
  cfg.t_end = -1.0;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
  cfg.t_end = 1.0;
  cfg.cfl_safety = 1.5;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
  cfg.cfl_safety = 0.2;
  cfg.a_grid = {-1.0};
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("default profile grid is sorted and contains the gate areas") {
  const auto a = default_a_grid();
  CHECK(a.size() == 33);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] > a[i - 1]);
  bool has_pi = false, has_2pi = false, has_3pi = false;
  for (double v : a) {
    has_pi |= v == M_PI;
    has_2pi |= v == 2 * M_PI;
    has_3pi |= v == 3 * M_PI;
    CHECK(v > 0.0);
    CHECK(v < kFourPi);
  }
  CHECK(has_pi);
  CHECK(has_2pi);
  CHECK(has_3pi);
}
