#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sphereflow/bounds.hpp"
#include "sphereflow/isoperimetric.hpp"
#include "trajectory_cache.hpp"

using namespace sphereflow;

namespace {

constexpr double kFourPi = 4.0 * M_PI;

// Synthetic trajectory with prescribed kappa(t); enough for decay checks.
FlowTrajectory synthetic_kappa(const std::vector<double>& ts,
                               const std::vector<double>& kappas) {
  FlowTrajectory traj;
  traj.a_grid = {2 * M_PI};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    TimeSeriesRecord rec;
    rec.t = ts[i];
    rec.kappa = kappas[i];
    rec.ratio_sq = {1.0};
    rec.sigmoid_bound = {1.0};
    rec.cf_bound = {1.0};
    rec.residual = {0.0};
    traj.records.push_back(rec);
  }
  return traj;
}

}  // namespace

TEST_CASE("comparison coefficient values and symmetry") {
  CHECK(b_coefficient(2 * M_PI) == 2.0);
  CHECK(b_coefficient(M_PI) == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> dist(1e-3, kFourPi - 1e-3);
  for (int i = 0; i < 300; ++i) {
    const double a = dist(eng);
    CHECK(b_coefficient(a) ==
          doctest::Approx(b_coefficient(kFourPi - a)).epsilon(1e-12));
    // matches the textbook form
    const double direct =
        (a * a + (kFourPi - a) * (kFourPi - a)) / (a * (kFourPi - a));
    CHECK(b_coefficient(a) == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK_THROWS_AS(b_coefficient(0.0), std::invalid_argument);
  CHECK_THROWS_AS(b_coefficient(kFourPi), std::invalid_argument);
}

TEST_CASE("comparison coefficient never dips below two") {
  for (int i = 0; i < 10000; ++i) {
    const double a = kFourPi * (i + 0.5) / 10000.0;
    CHECK(b_coefficient(a) >= 2.0);
  }
  CHECK(std::abs(b_coefficient(2 * M_PI) - 2.0) <= 1e-12);
}

TEST_CASE("logistic solution endpoints and ODE property") {
  CHECK(comparison_solution(comparison_params(M_PI, 0.0), 0.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(comparison_solution(comparison_params(M_PI, 1.0), 1e3) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // d/dt ln f = b (1 - f), probed by centered differences
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> cdist(-3.0, 3.0);
  std::uniform_real_distribution<double> tdist(0.0, 2.0);
  std::uniform_real_distribution<double> adist(0.5, kFourPi - 0.5);
  for (int i = 0; i < 100; ++i) {
    ComparisonParams p = comparison_params(adist(eng), cdist(eng));
    const double t = tdist(eng);
    const double dt = 1e-5;
    const double dln = (std::log(comparison_solution(p, t + dt)) -
                        std::log(comparison_solution(p, t - dt))) /
                       (2 * dt);
    CHECK(std::abs(dln - p.b * (1.0 - comparison_solution(p, t))) <= 1e-6);
  }

  // monotone increasing in t
  const ComparisonParams p = comparison_params(1.0, -2.0);
  double prev = 0.0;
  for (double t = 0.0; t < 3.0; t += 0.1) {
    const double f = comparison_solution(p, t);
    CHECK(f > prev);
    CHECK(f < 1.0);
    prev = f;
  }
}

TEST_CASE("offset from the initial profile value") {
  CHECK(c_from_initial(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c_from_initial(2.0 / 3.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::isinf(c_from_initial(1.0)));
  CHECK(comparison_solution(comparison_params(M_PI, c_from_initial(1.0)),
                            0.0) == 1.0);
  CHECK_THROWS_AS(c_from_initial(0.0), std::invalid_argument);
  CHECK_THROWS_AS(c_from_initial(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(c_from_initial(1.5), std::invalid_argument);

  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> dist(1e-3, 1.0 - 1e-9);
  for (int i = 0; i < 100; ++i) {
    const double x = dist(eng);
    CHECK(comparison_solution(comparison_params(M_PI, c_from_initial(x)),
                              0.0) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("offset from the initial curvature maximum") {
  CHECK(c_from_kappa(M_PI, 2.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // agrees with the profile lower bound at t = 0
  std::mt19937_64 eng(6);
  std::uniform_real_distribution<double> kdist(1.0 + 1e-6, 3.0);
  std::uniform_real_distribution<double> udist(0.05, 0.95);
  for (int i = 0; i < 200; ++i) {
    const double kappa0 = kdist(eng);
    const double a = udist(eng) * kFourPi / kappa0;
    const double c = c_from_kappa(a, kappa0);
    CHECK(1.0 / (1.0 + std::exp(-c)) ==
          doctest::Approx(cf_lower_bound(a, kappa0)).epsilon(1e-12));
  }
  // round limit: the offset diverges
  CHECK(c_from_kappa(M_PI, 1.0 + 1e-9) > 15.0);
  CHECK_THROWS_AS(c_from_kappa(M_PI, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(c_from_kappa(2 * M_PI + 0.1, 2.0), std::invalid_argument);
}

TEST_CASE("logistic lower bound holds along the perturbed run") {
  const FlowTrajectory& traj = sphereflow::testing::l2_trajectory();
  for (double a : {M_PI, 2 * M_PI, 3 * M_PI}) {
    const BoundReport rep = sigmoid_bound_check(traj, a);
    CHECK(rep.violations.empty());
    CHECK(rep.max_deficit >= -1e-4);
  }
}

TEST_CASE("logistic lower bound holds trivially on the round run") {
  const FlowTrajectory& traj = sphereflow::testing::round_trajectory();
  const BoundReport rep = sigmoid_bound_check(traj, 2 * M_PI);
  CHECK(rep.violations.empty());
}

TEST_CASE("corrupted profile value is reported with its time") {
  FlowTrajectory traj = sphereflow::testing::l2_trajectory();
  const std::size_t victim = traj.records.size() / 2;
  std::size_t ai = 0;
  while (std::abs(traj.a_grid[ai] - 2 * M_PI) > 1e-9) ++ai;
  traj.records[victim].ratio_sq[ai] *= 0.5;
  const BoundReport rep = sigmoid_bound_check(traj, 2 * M_PI);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].t == traj.records[victim].t);
  CHECK_THROWS_AS(sigmoid_bound_check(traj, 1.2345), std::invalid_argument);
}

TEST_CASE("curvature decay bound holds along perturbed runs") {
  const BoundReport rep =
      kappa_decay_check(sphereflow::testing::l2_trajectory());
  CHECK(rep.violations.empty());

  FlowConfig cfg;
  cfg.n = 128;
  cfg.t_end = 3.0;
  cfg.initial.kind = InitialKind::L3;
  cfg.initial.amplitude = 0.05;
  cfg.a_grid = {2 * M_PI};
  const FlowTrajectory l3 = run(cfg);
  CHECK(kappa_decay_check(l3).violations.empty());
}

TEST_CASE("decay check rejects round data and flags slow series") {
  CHECK_THROWS_AS(
      kappa_decay_check(sphereflow::testing::round_trajectory()),
      std::invalid_argument);

  // rate-one decay violates the rate-two bound at large t
  std::vector<double> ts, ks;
  for (int i = 0; i <= 30; ++i) {
    const double t = 0.1 * i;
    ts.push_back(t);
    ks.push_back(1.0 + 0.5 * std::exp(-t));
  }
  const BoundReport rep = kappa_decay_check(synthetic_kappa(ts, ks));
  CHECK(rep.violations.size() > 20);
  for (std::size_t i = 1; i < rep.violations.size(); ++i)
    CHECK(rep.violations[i].t > rep.violations[i - 1].t);
  CHECK(rep.max_deficit < 0.0);
}

TEST_CASE("rearranged decay inequality slack") {
  // identity case: equal curvatures at zero elapsed time
  CHECK(contradiction_inequality(1.0, 0.0, 1.5, 1.5) == 0.0);

  // small areas drive the slack negative when kappa decays at rate two
  const double kappa0 = 1.5, t = 1.0;
  const double kappa_t =
      kappa0 * std::exp(-2.0 * t) + (1.0 - std::exp(-2.0 * t));
  CHECK(contradiction_inequality(0.01, t, kappa0, kappa_t) < 0.0);
  CHECK(contradiction_inequality(0.1, t, kappa0, kappa_t) < 0.0);

  // smooth in its inputs
  const double base = contradiction_inequality(1.0, 1.0, 1.5, 1.2);
  CHECK(std::abs(contradiction_inequality(1.0 + 1e-8, 1.0, 1.5, 1.2) -
                 base) < 1e-6);
  CHECK(std::abs(contradiction_inequality(1.0, 1.0 + 1e-8, 1.5, 1.2) -
                 base) < 1e-6);

  CHECK_THROWS_AS(contradiction_inequality(1.0, 1.0, 0.9, 1.2),
                  std::invalid_argument);
  CHECK_THROWS_AS(contradiction_inequality(10.0, 1.0, 1.5, 1.2),
                  std::invalid_argument);
}
