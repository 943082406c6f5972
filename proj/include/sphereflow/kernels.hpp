#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the metric and flow layers. Every
// kernel has a scalar reference implementation and, on x86-64, an AVX2+FMA
// variant selected at runtime. The two are equivalence-tested; results may
// differ by rounding only.
namespace sphereflow::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool backend_available(Backend b);
// Test hook: pin the backend (throws std::invalid_argument if unavailable).
void force_backend(Backend b);
// Return to CPU auto-detection.
void reset_backend();

// y[i] = exp(clamp(alpha*x[i], -700, 700)).
void exp_scale(const double* x, std::size_t n, double alpha, double* y);

// sum_i w[i]*exp(2*u[i]) with the same clamp as exp_scale.
double weighted_exp2_sum(const double* u, const double* w, std::size_t n);

// sum_i a[i]*b[i]*c[i]
double triple_dot(const double* a, const double* b, const double* c,
                  std::size_t n);

// Gaussian curvature of the conformal factor u on a uniform colatitude grid:
//   k[i] = exp(-2u[i]) * (1 - u''[i] - cot(theta_i)*u'[i])
// with centered differences and even-reflection ghosts at both ends.
// inv_h2 = 1/h^2, inv_2h = 1/(2h). Requires n >= 2.
void gaussian_curvature(const double* u, const double* cot_theta,
                        std::size_t n, double inv_h2, double inv_2h,
                        double* k);

// y[i] = u[i] + a*k[i]
void axpby(const double* u, const double* k, std::size_t n, double a,
           double* y);

// y[i] = u[i] + (dt/6)*(k1[i] + 2*k2[i] + 2*k3[i] + k4[i])
void rk4_combine(const double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, std::size_t n, double dt,
                 double* y);

// u[i] += c
void shift(double* u, std::size_t n, double c);

double min_value(const double* x, std::size_t n);
double max_value(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);

// Implementation table; one instance per backend.
struct KernelTable {
  void (*exp_scale)(const double*, std::size_t, double, double*);
  double (*weighted_exp2_sum)(const double*, const double*, std::size_t);
  double (*triple_dot)(const double*, const double*, const double*,
                       std::size_t);
  void (*gaussian_curvature)(const double*, const double*, std::size_t,
                             double, double, double*);
  void (*axpby)(const double*, const double*, std::size_t, double, double*);
  void (*rk4_combine)(const double*, const double*, const double*,
                      const double*, const double*, std::size_t, double,
                      double*);
  void (*shift)(double*, std::size_t, double);
  double (*min_value)(const double*, std::size_t);
  double (*max_value)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
};

}  // namespace sphereflow::kernels
