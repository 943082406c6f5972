#include "sphereflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace sphereflow {

namespace {

constexpr double kRoundoffFloor = 1e-14;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DecayFit fit_decay_rate(const FlowTrajectory& traj, double window_lo,
                        double window_hi) {
  DecayFit fit;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;

  std::vector<double> ts, ys;
  for (const auto& rec : traj.records) {
    if (rec.t < window_lo || rec.t > window_hi) continue;
    const double excess = rec.kappa - 1.0;
    if (excess <= kRoundoffFloor) continue;  // at or below the noise floor
    ts.push_back(rec.t);
    ys.push_back(std::log(excess));
  }
  fit.points = static_cast<int>(ts.size());
  if (fit.points < 5) {
    fit.note = "too few usable points in the fit window";
    return fit;
  }

  double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
    stt += ts[i] * ts[i];
    sty += ts[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double m = static_cast<double>(ts.size());
  const double denom = m * stt - st * st;
  if (denom <= 0.0) {
    fit.note = "degenerate fit window";
    return fit;
  }
  const double slope = (m * sty - st * sy) / denom;
  fit.rate = -slope;
  const double mean_y = sy / m;
  double ss_tot = syy - m * mean_y * mean_y;
  double ss_res = 0.0;
  const double icept = (sy - slope * st) / m;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double e = ys[i] - (icept + slope * ts[i]);
    ss_res += e * e;
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.valid = true;
  return fit;
}

std::string series_csv(const FlowTrajectory& traj) {
  std::string out = "t,kappa,k_min,area,gauss_bonnet";
  for (double a : traj.a_grid) {
    const std::string tag = fmt17(a);
    out += ",ratio_sq@" + tag + ",sigmoid@" + tag + ",cf_bound@" + tag +
           ",residual@" + tag;
  }
  out += ",decay_bound\n";

  for (const auto& rec : traj.records) {
    out += fmt17(rec.t);
    out += ',' + fmt17(rec.kappa);
    out += ',' + fmt17(rec.k_min);
    out += ',' + fmt17(rec.area);
    out += ',' + fmt17(rec.gauss_bonnet);
    for (std::size_t i = 0; i < traj.a_grid.size(); ++i) {
      out += ',' + fmt17(rec.ratio_sq[i]);
      out += ',' + fmt17(rec.sigmoid_bound[i]);
      out += ',' + fmt17(rec.cf_bound[i]);
      out += ',' + fmt17(rec.residual[i]);
    }
    out += ',' + fmt17(rec.decay_bound);
    out += '\n';
  }
  return out;
}

}  // namespace sphereflow
