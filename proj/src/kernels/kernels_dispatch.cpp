#include "sphereflow/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace sphereflow::kernels {

extern const KernelTable scalar_table;
#if SPHEREFLOW_HAVE_AVX2_SOURCES
extern const KernelTable avx2_table;
#endif

namespace {

bool cpu_has_avx2() {
#if SPHEREFLOW_HAVE_AVX2_SOURCES && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  const KernelTable* table;
  Backend backend;
};

Dispatch detect() {
  // SPHEREFLOW_BACKEND=scalar|avx2 overrides CPU detection
  if (const char* env = std::getenv("SPHEREFLOW_BACKEND")) {
    const std::string_view want(env);
    if (want == "scalar") return {&scalar_table, Backend::Scalar};
#if SPHEREFLOW_HAVE_AVX2_SOURCES
    if (want == "avx2" && cpu_has_avx2()) return {&avx2_table, Backend::Avx2};
#endif
  }
#if SPHEREFLOW_HAVE_AVX2_SOURCES
  if (cpu_has_avx2()) return {&avx2_table, Backend::Avx2};
#endif
  return {&scalar_table, Backend::Scalar};
}

Dispatch& active() {
  static Dispatch d = detect();
  return d;
}

}  // namespace

Backend active_backend() { return active().backend; }

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
  return cpu_has_avx2();
}

void force_backend(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument("kernel backend not available on this CPU");
  switch (b) {
    case Backend::Scalar:
      active() = {&scalar_table, Backend::Scalar};
      break;
    case Backend::Avx2:
#if SPHEREFLOW_HAVE_AVX2_SOURCES
      active() = {&avx2_table, Backend::Avx2};
#endif
      break;
  }
}

void reset_backend() { active() = detect(); }

void exp_scale(const double* x, std::size_t n, double alpha, double* y) {
  active().table->exp_scale(x, n, alpha, y);
}

double weighted_exp2_sum(const double* u, const double* w, std::size_t n) {
  return active().table->weighted_exp2_sum(u, w, n);
}

double triple_dot(const double* a, const double* b, const double* c,
                  std::size_t n) {
  return active().table->triple_dot(a, b, c, n);
}

void gaussian_curvature(const double* u, const double* cot_theta,
                        std::size_t n, double inv_h2, double inv_2h,
                        double* k) {
  active().table->gaussian_curvature(u, cot_theta, n, inv_h2, inv_2h, k);
}

void axpby(const double* u, const double* k, std::size_t n, double a,
           double* y) {
  active().table->axpby(u, k, n, a, y);
}

void rk4_combine(const double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, std::size_t n, double dt,
                 double* y) {
  active().table->rk4_combine(u, k1, k2, k3, k4, n, dt, y);
}

void shift(double* u, std::size_t n, double c) {
  active().table->shift(u, n, c);
}

double min_value(const double* x, std::size_t n) {
  return active().table->min_value(x, n);
}

double max_value(const double* x, std::size_t n) {
  return active().table->max_value(x, n);
}

double max_abs(const double* x, std::size_t n) {
  return active().table->max_abs(x, n);
}

}  // namespace sphereflow::kernels
