#pragma once

#include <memory>
#include <vector>

#include "sphereflow/grid.hpp"

namespace sphereflow {

// Axisymmetric conformal metric exp(2u(theta)) * g_round, sampled at the
// grid nodes, together with the flow time it belongs to.
struct MetricState {
  std::shared_ptr<const LatitudeGrid> grid;
  std::vector<double> u;
  double t = 0.0;
};

MetricState make_state(std::shared_ptr<const LatitudeGrid> grid,
                       std::vector<double> u, double t = 0.0);

// Pointwise Gaussian curvature plus its summary statistics.
struct CurvatureField {
  std::vector<double> k;
  double kappa = 0.0;   // max over nodes
  double k_min = 0.0;   // min over nodes
  double gb = 0.0;      // integral of K dV
};

// K = exp(-2u) * (1 - lap u), lap the axisymmetric round-sphere Laplacian
// discretized with centered differences and even reflection at the poles.
CurvatureField curvature(const MetricState& state);

// Pointwise K only (no statistics); out must have grid->n entries.
void curvature_values(const MetricState& state, double* out);

// 2*pi * sum_i exp(2u_i) * w_i, w_i the exact cell integral of sin(theta).
double total_area(const MetricState& state);

// Shift u by -ln(area/4pi)/2 so the quadrature area is exactly 4*pi.
MetricState project_area(const MetricState& state);

// Area of the cap {colatitude < theta}; theta in [0, pi].
double cap_area(const MetricState& state, double theta);

// Length of the latitude circle at theta in (0, pi); u is interpolated
// linearly between nodes with even reflection past the end nodes.
double cap_length(const MetricState& state, double theta);

// Precomputed per-state tables so repeated cap queries are O(log n) or
// cheaper. Holds a reference to the state's grid; keep the state alive.
class CapTable {
 public:
  explicit CapTable(const MetricState& state);

  double cap_area(double theta) const;
  double total_area() const { return total_; }
  // Meridian distance from the north pole, cumulative midpoint rule of e^u.
  double radius(double theta) const;
  // Linearly interpolated conformal factor.
  double u_at(double theta) const;
  double cap_length(double theta) const;
  const LatitudeGrid& grid() const { return *grid_; }

 private:
  std::shared_ptr<const LatitudeGrid> grid_;
  std::vector<double> exp2u_;   // exp(2u_i)
  std::vector<double> expu_;    // exp(u_i)
  std::vector<double> cum_;     // cumulative cell area integrals at faces
  std::vector<double> cum_r_;   // cumulative e^u at faces
  std::vector<double> u_;
  double total_ = 0.0;
};

}  // namespace sphereflow
