#include "sphereflow/kernels.hpp"

#include <algorithm>
#include <cmath>

// Reference implementations. Plain loops, left-to-right accumulation.
namespace sphereflow::kernels {
namespace {

constexpr double kExpClamp = 700.0;

inline double clamped_exp(double x) {
  return std::exp(std::clamp(x, -kExpClamp, kExpClamp));
}

void exp_scale_scalar(const double* x, std::size_t n, double alpha,
                      double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = clamped_exp(alpha * x[i]);
}

double weighted_exp2_sum_scalar(const double* u, const double* w,
                                std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * clamped_exp(2.0 * u[i]);
  return s;
}

double triple_dot_scalar(const double* a, const double* b, const double* c,
                         std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

void gaussian_curvature_scalar(const double* u, const double* cot_theta,
                               std::size_t n, double inv_h2, double inv_2h,
                               double* k) {
  for (std::size_t i = 0; i < n; ++i) {
    const double um = (i == 0) ? u[0] : u[i - 1];
    const double up = (i + 1 == n) ? u[n - 1] : u[i + 1];
    // (up + um) first keeps the stencil exactly reflection-symmetric
    const double lap =
        (up + um - 2.0 * u[i]) * inv_h2 + cot_theta[i] * (up - um) * inv_2h;
    k[i] = clamped_exp(-2.0 * u[i]) * (1.0 - lap);
  }
}

void axpby_scalar(const double* u, const double* k, std::size_t n, double a,
                  double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + a * k[i];
}

void rk4_combine_scalar(const double* u, const double* k1, const double* k2,
                        const double* k3, const double* k4, std::size_t n,
                        double dt, double* y) {
  const double c = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i)
    y[i] = u[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void shift_scalar(double* u, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) u[i] += c;
}

double min_value_scalar(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double max_value_scalar(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

}  // namespace

extern const KernelTable scalar_table = {
    exp_scale_scalar,    weighted_exp2_sum_scalar,
    triple_dot_scalar,   gaussian_curvature_scalar,
    axpby_scalar,        rk4_combine_scalar,
    shift_scalar,        min_value_scalar,
    max_value_scalar,    max_abs_scalar,
};

}  // namespace sphereflow::kernels
