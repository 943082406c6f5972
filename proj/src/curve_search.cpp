#include "sphereflow/curve_search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sphereflow/isoperimetric.hpp"

namespace sphereflow {

namespace {

constexpr double kFourPi = 4.0 * M_PI;
constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kPoleMargin = 0.02;

using Vertices = std::vector<std::array<double, 2>>;

double wrap_pi(double dphi) {
  dphi = std::fmod(dphi, kTwoPi);
  if (dphi > M_PI) dphi -= kTwoPi;
  if (dphi <= -M_PI) dphi += kTwoPi;
  return dphi;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t trial) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

int phi_winding(const Vertices& v) {
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    total += wrap_pi(q[1] - p[1]);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

double metric_length(const CapTable& table, const Vertices& v) {
  double len = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    const double dth = q[0] - p[0];
    const double dph = wrap_pi(q[1] - p[1]);
    const double thm =
        std::clamp(0.5 * (p[0] + q[0]), kPoleMargin, M_PI - kPoleMargin);
    const double s = std::sin(thm);
    len += std::exp(table.u_at(thm)) * std::hypot(dth, s * dph);
  }
  return len;
}

// Area of the region on the odd-parity side (away from the north pole),
// column-rasterized: per meridian column the crossing colatitudes are exact
// and the metric area integral between them is taken from the cap table.
// Each segment visits only the columns it spans (half-open in the direction
// of travel, so every crossing is counted exactly once).
double odd_side_area(const CapTable& table, const Vertices& v, int columns) {
  const double dcol = kTwoPi / columns;
  std::vector<std::pair<int, double>> crossings;  // (column, colatitude)
  crossings.reserve(v.size() + columns);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    const double dphi = wrap_pi(q[1] - p[1]);
    if (dphi == 0.0) continue;
    // column centers sit at (k + 1/2)*dcol for integer k
    long k_lo, k_hi;
    if (dphi > 0.0) {
      k_lo = static_cast<long>(std::ceil(p[1] / dcol - 0.5));
      k_hi = static_cast<long>(std::ceil((p[1] + dphi) / dcol - 0.5)) - 1;
    } else {
      k_lo = static_cast<long>(std::floor((p[1] + dphi) / dcol - 0.5)) + 1;
      k_hi = static_cast<long>(std::floor(p[1] / dcol - 0.5));
    }
    for (long k = k_lo; k <= k_hi; ++k) {
      const double f = ((k + 0.5) * dcol - p[1]) / dphi;
      const int c = static_cast<int>(((k % columns) + columns) % columns);
      crossings.emplace_back(c, p[0] + f * (q[0] - p[0]));
    }
  }
  std::sort(crossings.begin(), crossings.end());

  double area = 0.0;
  std::size_t i = 0;
  while (i < crossings.size()) {
    std::size_t j = i;
    while (j < crossings.size() && crossings[j].first == crossings[i].first)
      ++j;
    double strip = 0.0;
    std::size_t k = i;
    for (; k + 1 < j; k += 2)
      strip += table.cap_area(std::clamp(crossings[k + 1].second, 0.0, M_PI)) -
               table.cap_area(std::clamp(crossings[k].second, 0.0, M_PI));
    if (k < j)
      strip += table.total_area() -
               table.cap_area(std::clamp(crossings[k].second, 0.0, M_PI));
    area += strip * (dcol / kTwoPi);
    i = j;
  }
  return area;
}

// Pick whichever side of the curve matches the target better.
double effective_area(const CapTable& table, const Vertices& v, int columns,
                      double target) {
  const double odd = odd_side_area(table, v, columns);
  const double complement = table.total_area() - odd;
  return std::abs(odd - target) <= std::abs(complement - target) ? odd
                                                                 : complement;
}

bool segments_cross(const std::array<double, 2>& a1,
                    const std::array<double, 2>& a2,
                    std::array<double, 2> b1, std::array<double, 2> b2) {
  // align the phi frames (segments are short; one shift fits both ends)
  const double mid_a = 0.5 * (a1[1] + a2[1]);
  const double mid_b = 0.5 * (b1[1] + b2[1]);
  const double shift = kTwoPi * std::round((mid_a - mid_b) / kTwoPi);
  b1[1] += shift;
  b2[1] += shift;
  auto orient = [](const std::array<double, 2>& p,
                   const std::array<double, 2>& q,
                   const std::array<double, 2>& r) {
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
  };
  const double o1 = orient(a1, a2, b1), o2 = orient(a1, a2, b2);
  const double o3 = orient(b1, b2, a1), o4 = orient(b1, b2, a2);
  return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

bool is_simple(const Vertices& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through wrap
      if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

struct SearchContext {
  const CapTable& table;
  double target;
  int columns;
  double area_tol;
};

void apply_shift(Vertices& v, double s) {
  for (auto& p : v)
    p[0] = std::clamp(p[0] + s, kPoleMargin, M_PI - kPoleMargin);
}

void apply_scale(Vertices& v, double m, double thc, double phc) {
  for (auto& p : v) {
    p[0] = std::clamp(thc + m * (p[0] - thc), kPoleMargin, M_PI - kPoleMargin);
    p[1] = phc + m * wrap_pi(p[1] - phc);
  }
}

// Move the candidate toward/away from its enclosed region until the area
// matches the target: secant iteration on a shift (winding curves) or a
// scale about the centroid (contractible curves), bisection fallback.
bool project_to_area(const SearchContext& ctx, Vertices& v) {
  const bool winding = phi_winding(v) != 0;
  double thc = 0.0, phc = 0.0;
  if (!winding) {
    double sx = 0.0, sy = 0.0;
    for (const auto& p : v) {
      thc += p[0];
      sx += std::cos(p[1]);
      sy += std::sin(p[1]);
    }
    thc /= static_cast<double>(v.size());
    phc = std::atan2(sy, sx);
  }

  auto transformed = [&](double s) {
    Vertices w = v;
    if (winding)
      apply_shift(w, s);
    else
      apply_scale(w, std::exp(s), thc, phc);
    return w;
  };
  auto g = [&](double s) {
    return effective_area(ctx.table, transformed(s), ctx.columns, ctx.target) -
           ctx.target;
  };

  const double s_max = winding ? M_PI : 2.5;
  double s0 = 0.0, g0 = g(0.0);
  if (std::abs(g0) <= ctx.area_tol) return true;
  double s1 = std::clamp(g0 > 0.0 ? -0.05 : 0.05, -s_max, s_max);
  double g1 = g(s1);
  for (int it = 0; it < 30 && std::abs(g1) > 0.25 * ctx.area_tol; ++it) {
    const double denom = g1 - g0;
    double s2;
    if (std::abs(denom) < 1e-300) {
      s2 = s1 + (g1 > 0.0 ? -0.1 : 0.1);
    } else {
      s2 = s1 - g1 * (s1 - s0) / denom;
    }
    s2 = std::clamp(s2, -s_max, s_max);
    s0 = s1;
    g0 = g1;
    s1 = s2;
    g1 = g(s1);
  }
  if (std::abs(g1) > ctx.area_tol) {
    // bracket and bisect
    double lo = -s_max, hi = s_max;
    double glo = g(lo), ghi = g(hi);
    if (glo * ghi > 0.0) return false;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if (std::abs(gm) <= ctx.area_tol) {
        s1 = mid;
        g1 = gm;
        break;
      }
      ((glo < 0.0) == (gm < 0.0) ? lo : hi) = mid;
      ((glo < 0.0) == (gm < 0.0) ? glo : ghi) = gm;
      s1 = mid;
      g1 = gm;
    }
    if (std::abs(g1) > ctx.area_tol) return false;
  }
  v = transformed(s1);
  return true;
}

Vertices latitude_seed(double theta_c, int resolution) {
  Vertices v(resolution);
  for (int k = 0; k < resolution; ++k)
    v[k] = {theta_c, k * kTwoPi / resolution};
  return v;
}

Vertices circle_seed(double thc, double phc, double rho, int resolution) {
  Vertices v(resolution);
  const double stretch = 1.0 / std::max(std::sin(thc), 0.25);
  for (int k = 0; k < resolution; ++k) {
    const double tau = k * kTwoPi / resolution;
    const double th =
        std::clamp(thc + rho * std::cos(tau), kPoleMargin, M_PI - kPoleMargin);
    v[k] = {th, phc + rho * std::sin(tau) * stretch};
  }
  return v;
}

void smooth_window(Vertices& v, std::size_t start, std::size_t width) {
  const std::size_t n = v.size();
  Vertices orig = v;
  for (std::size_t k = 0; k < width; ++k) {
    const std::size_t i = (start + k) % n;
    const auto& prev = orig[(i + n - 1) % n];
    const auto& next = orig[(i + 1) % n];
    v[i][0] = 0.25 * prev[0] + 0.5 * orig[i][0] + 0.25 * next[0];
    v[i][1] = orig[i][1] + 0.25 * wrap_pi(prev[1] - orig[i][1]) +
              0.25 * wrap_pi(next[1] - orig[i][1]);
  }
}

}  // namespace

double brute_force_min_length(const MetricState& state, double a,
                              int resolution, int trials, std::uint64_t seed) {
  if (resolution < 16)
    throw std::invalid_argument("curve resolution must be >= 16");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  const CapTable table(state);
  if (!(a > 0.0 && a < table.total_area()))
    throw std::invalid_argument("enclosed area outside (0, total area)");

  const int columns = std::max(128, 4 * resolution);
  const double area_tol =
      std::max(1e-5, 1e-3 * std::min(a, table.total_area() - a));
  const SearchContext ctx{table, a, columns, area_tol};

  const double theta_c = theta_for_area(table, a);
  const double latitude_length = table.cap_length(theta_c);

  // seed set: the latitude circle plus translated circles
  const double side = std::min(a, table.total_area() - a);
  const double rho0 = std::acos(std::clamp(1.0 - side / kTwoPi, -1.0, 1.0));
  std::vector<Vertices> seeds;
  seeds.push_back(latitude_seed(theta_c, resolution));
  const double centers[][2] = {{M_PI / 2, 0.0},       {M_PI / 2, M_PI},
                               {M_PI / 2, M_PI / 2},  {M_PI / 2, 3 * M_PI / 2},
                               {M_PI / 4, 0.0},       {3 * M_PI / 4, M_PI}};
  for (const auto& c : centers)
    seeds.push_back(circle_seed(c[0], c[1], rho0, resolution));

  double best = latitude_length;
  const int iters = 160;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 eng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, resolution - 1);

    Vertices cand = seeds[trial % seeds.size()];
    if (trial >= static_cast<int>(seeds.size())) {
      for (auto& p : cand) {
        p[0] = std::clamp(p[0] + 0.01 * gauss(eng), kPoleMargin,
                          M_PI - kPoleMargin);
        p[1] += 0.01 * gauss(eng);
      }
    }
    if (!project_to_area(ctx, cand)) continue;
    if (!is_simple(cand)) continue;
    double cur = metric_length(table, cand);
    best = std::min(best, cur);

    for (int it = 0; it < iters; ++it) {
      const double amp = 0.15 * std::exp(-3.0 * it / iters);
      Vertices next = cand;
      const std::size_t start = pick(eng);
      const std::size_t width = 2 + pick(eng) % (resolution / 4);
      for (std::size_t k = 0; k < width; ++k) {
        auto& p = next[(start + k) % next.size()];
        p[0] = std::clamp(p[0] + amp * gauss(eng), kPoleMargin,
                          M_PI - kPoleMargin);
        p[1] += amp * gauss(eng) / std::max(std::sin(p[0]), 0.3);
      }
      smooth_window(next, start, width);
      if (!project_to_area(ctx, next)) continue;
      const double len = metric_length(table, next);
      if (len < cur - 1e-12 && is_simple(next)) {
        cand = std::move(next);
        cur = len;
      }
    }
    best = std::min(best, cur);
  }

  // the latitude circle is itself a candidate
  return std::min(best, latitude_length);
}

}  // namespace sphereflow
