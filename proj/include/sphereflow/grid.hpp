#pragma once

#include <vector>

namespace sphereflow {

// Cell-centered colatitude grid on (0, pi): theta_i = (i + 1/2) * pi/n.
// Poles are excluded; tables are built mirror-symmetric about pi/2 so that
// reflection-symmetric data stays exactly symmetric under every operator.
struct LatitudeGrid {
  int n = 0;
  double h = 0.0;                   // spacing pi/n
  std::vector<double> theta;        // node colatitudes
  std::vector<double> sin_theta;    // sin(theta_i)
  std::vector<double> cot_theta;    // cot(theta_i), antisymmetric in i
  std::vector<double> cos_face;     // cos(k*h), k = 0..n, cos_face[n/2] = 0
  std::vector<double> cell_weight;  // integral of sin over cell i
};

// Throws std::invalid_argument unless n is even and >= 16.
LatitudeGrid build_grid(int n);

}  // namespace sphereflow
