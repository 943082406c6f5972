#include "sphereflow/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace sphereflow {

LatitudeGrid build_grid(int n) {
  if (n < 16 || n % 2 != 0)
    throw std::invalid_argument("grid size must be even and >= 16, got " +
                                std::to_string(n));

  LatitudeGrid g;
  g.n = n;
  g.h = M_PI / n;
  g.theta.resize(n);
  g.sin_theta.resize(n);
  g.cot_theta.resize(n);
  g.cos_face.resize(n + 1);
  g.cell_weight.resize(n);

  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    const double th = (i + 0.5) * g.h;
    g.theta[i] = th;
    g.sin_theta[i] = std::sin(th);
    g.cot_theta[i] = std::cos(th) / g.sin_theta[i];
    // mirror images: theta_{n-1-i} = pi - theta_i
    g.theta[n - 1 - i] = M_PI - th;
    g.sin_theta[n - 1 - i] = g.sin_theta[i];
    g.cot_theta[n - 1 - i] = -g.cot_theta[i];
  }
  for (int k = 0; k <= half; ++k) {
    const double c = std::cos(k * g.h);
    g.cos_face[k] = c;
    g.cos_face[n - k] = -c;
  }
  g.cos_face[half] = 0.0;
  for (int i = 0; i < n; ++i)
    g.cell_weight[i] = g.cos_face[i] - g.cos_face[i + 1];

  return g;
}

}  // namespace sphereflow
