#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sphereflow/grid.hpp"

using namespace sphereflow;

TEST_CASE("grid nodes follow the cell-centered formula") {
  const LatitudeGrid g = build_grid(16);
  CHECK(g.h == doctest::Approx(M_PI / 16).epsilon(1e-16));
  CHECK(g.theta[0] == doctest::Approx(M_PI / 32).epsilon(1e-16));
  CHECK(g.theta[15] == doctest::Approx(M_PI - M_PI / 32).epsilon(1e-16));
  for (int i = 0; i < 16; ++i)
    CHECK(g.theta[i] ==
          doctest::Approx((i + 0.5) * M_PI / 16).epsilon(1e-15));
}

TEST_CASE("grid rejects odd or too-small sizes") {
  CHECK_THROWS_AS(build_grid(15), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(14), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(-16), std::invalid_argument);
  CHECK_NOTHROW(build_grid(16));
}

TEST_CASE("grid is strictly increasing with no pole nodes") {
  const LatitudeGrid g = build_grid(64);
  CHECK(g.theta.front() > 0.0);
  CHECK(g.theta.back() < M_PI);
  for (int i = 1; i < g.n; ++i) CHECK(g.theta[i] > g.theta[i - 1]);
}

TEST_CASE("grid tables are exactly mirror-symmetric") {
  const LatitudeGrid g = build_grid(128);
  for (int i = 0; i < g.n / 2; ++i) {
    const int j = g.n - 1 - i;
    CHECK(g.theta[j] == M_PI - g.theta[i]);
    CHECK(g.sin_theta[j] == g.sin_theta[i]);
    CHECK(g.cot_theta[j] == -g.cot_theta[i]);
    CHECK(g.cell_weight[j] == g.cell_weight[i]);
  }
  CHECK(g.cos_face[0] == 1.0);
  CHECK(g.cos_face[g.n] == -1.0);
  CHECK(g.cos_face[g.n / 2] == 0.0);
}

TEST_CASE("cell weights sum to the full sine integral") {
  for (int n : {16, 64, 256}) {
    const LatitudeGrid g = build_grid(n);
    double sum = 0.0;
    for (double w : g.cell_weight) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  }
}
