#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "sphereflow/curve_search.hpp"
#include "sphereflow/isoperimetric.hpp"
#include "trajectory_cache.hpp"

using namespace sphereflow;
using sphereflow::testing::make_metric;

namespace {

MetricState round_state(int n) {
  auto grid = std::make_shared<const LatitudeGrid>(build_grid(n));
  return project_area({grid, std::vector<double>(n, 0.0), 0.0});
}

double latitude_length_at(const MetricState& s, double a) {
  const CapTable table(s);
  return table.cap_length(theta_for_area(table, a));
}

}  // namespace

TEST_CASE("search stays within 2% of the great circle") {
  const MetricState s = round_state(128);
  const double best = brute_force_min_length(s, 2 * M_PI, 64, 30, 7);
  CHECK(best >= 0.98 * 2 * M_PI);
  CHECK(best <= latitude_length_at(s, 2 * M_PI));
}

TEST_CASE("search stays within 2% of the round small-cap circle") {
  const MetricState s = round_state(128);
  const double best = brute_force_min_length(s, M_PI, 64, 30, 7);
  CHECK(best >= 0.98 * M_PI * std::sqrt(3.0));
  CHECK(best <= latitude_length_at(s, M_PI));
}

TEST_CASE("search does not beat the latitude circle on a symmetric bump") {
  const MetricState s =
      project_area(make_metric(128, sphereflow::testing::legendre2_cos, 0.05));
  const double lat = latitude_length_at(s, 2 * M_PI);
  const double best = brute_force_min_length(s, 2 * M_PI, 64, 40, 11);
  CHECK(best >= 0.98 * lat);
  CHECK(best <= lat);
}

TEST_CASE("search finds the off-axis minimizer when the ring is flat") {
  // negative amplitude pushes the curvature maximum onto the equator ring;
  // small caps there are much shorter than polar latitude caps
  const MetricState s =
      project_area(make_metric(128, sphereflow::testing::legendre2_cos, -0.5));
  const double a = 0.3;
  const double lat = latitude_length_at(s, a);
  const double best = brute_force_min_length(s, a, 48, 40, 13);
  CHECK(best < 0.98 * lat);
}

TEST_CASE("latitude seed makes the search an upper bound everywhere") {
  const MetricState s =
      project_area(make_metric(64, sphereflow::testing::legendre3_cos, 0.2));
  for (double a : {0.5, M_PI, 2 * M_PI, 8.0}) {
    const double best = brute_force_min_length(s, a, 32, 6, 3);
    CHECK(best <= latitude_length_at(s, a) * (1.0 + 1e-12));
  }
}

TEST_CASE("search is deterministic for a fixed seed") {
  const MetricState s =
      project_area(make_metric(64, sphereflow::testing::legendre2_cos, 0.05));
  const double r1 = brute_force_min_length(s, M_PI, 32, 10, 42);
  const double r2 = brute_force_min_length(s, M_PI, 32, 10, 42);
  CHECK(r1 == r2);
}

TEST_CASE("search validates its arguments") {
  const MetricState s = round_state(64);
  CHECK_THROWS_AS(brute_force_min_length(s, 2 * M_PI, 8, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_min_length(s, 2 * M_PI, 64, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_min_length(s, -1.0, 64, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_min_length(s, 20.0, 64, 10),
                  std::invalid_argument);
}
