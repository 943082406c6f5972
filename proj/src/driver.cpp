#include "sphereflow/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "sphereflow/bounds.hpp"
#include "sphereflow/curve_search.hpp"
#include "sphereflow/isoperimetric.hpp"
#include "sphereflow/manifest.hpp"

namespace sphereflow {

namespace {

constexpr double kFourPi = 4.0 * M_PI;
constexpr double kOracleMinRatio = 0.98;
constexpr int kOracleResolution = 64;
constexpr int kOracleTrials = 200;

const double kGateAreas[] = {M_PI, 2.0 * M_PI, 3.0 * M_PI};

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

nlohmann::json check_json(const CheckSummary& c) {
  nlohmann::json j;
  j["pass"] = c.pass;
  j["worst_margin"] = c.worst_margin;
  j["violations"] = c.violations;
  if (c.vacuous) j["vacuous"] = true;
  return j;
}

void print_check(const char* name, const CheckSummary& c) {
  std::printf("check %-15s %s  (worst margin %.3e, violations %zu%s)\n", name,
              c.pass ? "pass" : "FAIL", c.worst_margin, c.violations,
              c.vacuous ? ", vacuous" : "");
}

}  // namespace

bool BatteryResult::all_pass() const {
  return area.pass && gauss_bonnet.pass && chavel_feldman.pass &&
         sigmoid.pass && kappa_decay.pass;
}

FlowConfig resolved_config(const RunManifest& manifest) {
  FlowConfig cfg = manifest.config;
  cfg.a_grid = manifest.a_grid;
  if (cfg.initial.kind == InitialKind::Custom && cfg.initial.custom_u.empty())
    cfg.initial.custom_u = load_custom_initial(cfg.initial.custom_path);
  return cfg;
}

BatteryResult evaluate_battery(const FlowTrajectory& traj,
                               const RunManifest& manifest) {
  BatteryResult result;
  const auto& records = traj.records;

  // area normalization and curvature integral, every saved record
  double worst_area = 0.0, worst_gb = 0.0;
  for (const auto& rec : records) {
    worst_area = std::max(worst_area, std::abs(rec.area - kFourPi));
    worst_gb = std::max(worst_gb, std::abs(rec.gauss_bonnet - kFourPi));
  }
  result.area = {worst_area <= kAreaTol, false, worst_area, 0};
  result.gauss_bonnet = {worst_gb <= manifest.tol_gb, false, worst_gb, 0};

  // length-squared lower bound across the whole profile grid
  CheckSummary cf;
  cf.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < traj.a_grid.size(); ++i) {
      const double a = traj.a_grid[i];
      const double round_sq = a * (kFourPi - a);
      const double margin =
          rec.ratio_sq[i] * round_sq - (kFourPi * a - rec.kappa * a * a);
      cf.worst_margin = std::min(cf.worst_margin, margin);
      if (margin < -manifest.tol_cf) ++cf.violations;
    }
  }
  cf.pass = cf.violations == 0;
  result.chavel_feldman = cf;

  // logistic comparison at the gate areas present in the grid
  CheckSummary sg;
  sg.worst_margin = std::numeric_limits<double>::infinity();
  for (double gate : kGateAreas) {
    for (double a : traj.a_grid) {
      if (std::abs(a - gate) > 1e-9) continue;
      result.sigmoid_gate_areas.push_back(a);
      const BoundReport rep = sigmoid_bound_check(traj, a, manifest.tol_bound);
      sg.worst_margin = std::min(sg.worst_margin, rep.max_deficit);
      sg.violations += rep.violations.size();
    }
  }
  if (result.sigmoid_gate_areas.empty()) {
    sg.vacuous = true;
    sg.worst_margin = 0.0;
  }
  sg.pass = sg.violations == 0;
  result.sigmoid = sg;

  // curvature decay bound
  CheckSummary kd;
  try {
    const BoundReport rep = kappa_decay_check(traj, manifest.tol_bound);
    kd.worst_margin = rep.max_deficit;
    kd.violations = rep.violations.size();
    kd.pass = rep.violations.empty();
  } catch (const std::invalid_argument&) {
    kd.vacuous = true;  // round initial data
  }
  result.kappa_decay = kd;

  const double t_end = records.empty() ? 0.0 : records.back().t;
  result.decay_fit = fit_decay_rate(traj, t_end / 3.0, t_end);
  return result;
}

nlohmann::json summary_json(const FlowTrajectory& traj,
                            const RunManifest& manifest,
                            const BatteryResult& battery) {
  nlohmann::json j;
  j["checks"]["area"] = check_json(battery.area);
  j["checks"]["gauss_bonnet"] = check_json(battery.gauss_bonnet);
  j["checks"]["chavel_feldman"] = check_json(battery.chavel_feldman);
  j["checks"]["sigmoid"] = check_json(battery.sigmoid);
  j["checks"]["sigmoid"]["gate_areas"] = battery.sigmoid_gate_areas;
  j["checks"]["kappa_decay"] = check_json(battery.kappa_decay);

  nlohmann::json fit;
  fit["valid"] = battery.decay_fit.valid;
  fit["rate"] = battery.decay_fit.rate;
  fit["r_squared"] = battery.decay_fit.r_squared;
  fit["window"] = {battery.decay_fit.window_lo, battery.decay_fit.window_hi};
  fit["points"] = battery.decay_fit.points;
  if (!battery.decay_fit.note.empty()) fit["note"] = battery.decay_fit.note;
  j["decay_fit"] = fit;

  const FlowConfig& cfg = manifest.config;
  nlohmann::json c;
  c["n"] = cfg.n;
  if (cfg.dt)
    c["dt"] = *cfg.dt;
  else
    c["dt"] = "auto";
  c["t_end"] = cfg.t_end;
  if (cfg.save_every)
    c["save_every"] = *cfg.save_every;
  else
    c["save_every"] = "auto";
  c["cfl_safety"] = cfg.cfl_safety;
  switch (cfg.initial.kind) {
    case InitialKind::Round: c["initial"] = "round"; break;
    case InitialKind::L2: c["initial"] = "l2"; break;
    case InitialKind::L3: c["initial"] = "l3"; break;
    case InitialKind::Cos: c["initial"] = "cos"; break;
    case InitialKind::Custom:
      c["initial"] = "custom:" + cfg.initial.custom_path;
      break;
  }
  c["amplitude"] = cfg.initial.amplitude;
  c["a_grid"] = traj.a_grid;
  c["seed"] = manifest.seed;
  c["output_dir"] = manifest.output_dir;
  j["config"] = c;

  j["tolerances"]["area"] = kAreaTol;
  j["tolerances"]["tol_gb"] = manifest.tol_gb;
  j["tolerances"]["tol_cf"] = manifest.tol_cf;
  j["tolerances"]["tol_bound"] = manifest.tol_bound;

  j["versions"]["sphereflow"] = kVersion;
  j["versions"]["series_format"] = kSeriesFormat;
  return j;
}

int simulate_command(const RunManifest& manifest) {
  FlowTrajectory traj;
  try {
    traj = run(resolved_config(manifest));
  } catch (const FlowDivergenceError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    nlohmann::json j;
    j["divergence"] = {{"time", e.time()}};
    j["versions"] = {{"sphereflow", kVersion}};
    write_file(manifest.output_dir, "summary.json", j.dump(2) + "\n");
    return 2;
  }

  const BatteryResult battery = evaluate_battery(traj, manifest);
  write_file(manifest.output_dir, "series.csv", series_csv(traj));
  write_file(manifest.output_dir, "summary.json",
             summary_json(traj, manifest, battery).dump(2) + "\n");

  print_check("area", battery.area);
  print_check("gauss_bonnet", battery.gauss_bonnet);
  print_check("chavel_feldman", battery.chavel_feldman);
  print_check("sigmoid", battery.sigmoid);
  print_check("kappa_decay", battery.kappa_decay);
  if (battery.decay_fit.valid)
    std::printf("decay fit: rate %.4f over [%.3g, %.3g], r^2 %.6f\n",
                battery.decay_fit.rate, battery.decay_fit.window_lo,
                battery.decay_fit.window_hi, battery.decay_fit.r_squared);
  return battery.all_pass() ? 0 : 1;
}

int convergence_command(const RunManifest& manifest,
                        const std::vector<int>& grids) {
  for (std::size_t i = 1; i < grids.size(); ++i)
    if (grids[i] <= grids[i - 1])
      throw std::invalid_argument("grids must be strictly increasing");
  if (grids.size() < 3)
    throw std::invalid_argument("need at least three grid sizes");

  std::vector<double> kappa_end, gb_err;
  for (int n : grids) {
    RunManifest m = manifest;
    m.config.n = n;
    m.a_grid = {2.0 * M_PI};  // profile columns are not used here
    const FlowTrajectory traj = run(resolved_config(m));
    kappa_end.push_back(traj.records.back().kappa);
    double worst = 0.0;
    for (const auto& rec : traj.records)
      worst = std::max(worst, std::abs(rec.gauss_bonnet - kFourPi));
    gb_err.push_back(worst);
  }

  const std::size_t g = grids.size();
  std::vector<double> kappa_diff(g, std::nan(""));
  for (std::size_t i = 1; i < g; ++i)
    kappa_diff[i] = std::abs(kappa_end[i] - kappa_end[i - 1]);

  // orders from consecutive rows; floor-limited data is skipped, not failed
  constexpr double kGbFloor = 1e-11;
  constexpr double kKappaFloor = 1e-13;
  std::vector<double> gb_order(g, std::nan("")), kappa_order(g, std::nan(""));
  for (std::size_t i = 1; i < g; ++i) {
    const double rho = double(grids[i]) / double(grids[i - 1]);
    if (gb_err[i - 1] > kGbFloor && gb_err[i] > kGbFloor)
      gb_order[i] = std::log(gb_err[i - 1] / gb_err[i]) / std::log(rho);
    if (i >= 2 && kappa_diff[i - 1] > kKappaFloor &&
        kappa_diff[i] > kKappaFloor)
      kappa_order[i] =
          std::log(kappa_diff[i - 1] / kappa_diff[i]) / std::log(rho);
  }

  std::string csv = "n,kappa_end,gb_err,kappa_diff,kappa_order,gb_order\n";
  char buf[256];
  for (std::size_t i = 0; i < g; ++i) {
    auto field = [&](double v) {
      if (std::isnan(v)) return std::string();
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      return std::string(buf);
    };
    std::snprintf(buf, sizeof(buf), "%d", grids[i]);
    csv += buf;
    csv += ',' + field(kappa_end[i]) + ',' + field(gb_err[i]) + ',' +
           field(kappa_diff[i]) + ',' + field(kappa_order[i]) + ',' +
           field(gb_order[i]) + '\n';
  }
  write_file(manifest.output_dir, "convergence.csv", csv);

  const double gb_last = gb_order.back();
  const double kappa_last = kappa_order.back();
  bool ok = true;
  if (std::isnan(gb_last))
    std::printf("gb error at round-off floor; order check skipped\n");
  else {
    std::printf("gb observed order %.3f\n", gb_last);
    ok = ok && gb_last >= 1.8;
  }
  if (std::isnan(kappa_last))
    std::printf("kappa differences at round-off floor; order check skipped\n");
  else {
    std::printf("kappa observed order %.3f\n", kappa_last);
    ok = ok && kappa_last >= 1.8;
  }
  return ok ? 0 : 1;
}

int oracle_command(const RunManifest& manifest, double a, double t) {
  if (!(a > 0.0 && a < kFourPi))
    throw std::invalid_argument("oracle area must lie in (0, 4pi)");
  if (!(t >= 0.0 && t <= manifest.config.t_end))
    throw std::invalid_argument("oracle time outside the run's time range");

  RunManifest m = manifest;
  m.a_grid = {2.0 * M_PI};
  const FlowTrajectory traj = run(resolved_config(m));

  std::size_t j = 0;
  for (std::size_t i = 1; i < traj.states.size(); ++i)
    if (std::abs(traj.states[i].t - t) < std::abs(traj.states[j].t - t)) j = i;
  const MetricState& state = traj.states[j];

  const CapTable table(state);
  const double lat = table.cap_length(theta_for_area(table, a));
  const double oracle = brute_force_min_length(state, a, kOracleResolution,
                                               kOracleTrials, manifest.seed);
  const double ratio = oracle / lat;
  std::printf("latitude_length %.17g\n", lat);
  std::printf("oracle_length   %.17g\n", oracle);
  std::printf("ratio           %.17g\n", ratio);
  return ratio >= kOracleMinRatio ? 0 : 1;
}

}  // namespace sphereflow
