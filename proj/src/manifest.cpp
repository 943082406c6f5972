#include "sphereflow/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sphereflow {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

double parse_double(int line, const std::string& key,
                    const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw ConfigError(line, "value for '" + key + "' is not a number: '" +
                                value + "'");
  return out;
}

long parse_int(int line, const std::string& key, const std::string& value) {
  long out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw ConfigError(line, "value for '" + key + "' is not an integer: '" +
                                value + "'");
  return out;
}

std::vector<double> parse_a_grid(int line, const std::string& value) {
  std::vector<double> grid;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      throw ConfigError(line, "empty entry in a_grid list");
    grid.push_back(parse_double(line, "a_grid", item));
  }
  if (grid.empty()) throw ConfigError(line, "a_grid list is empty");
  for (double a : grid)
    if (!(a > 0.0 && a < kFourPi))
      throw ConfigError(line, "a_grid values must lie in (0, 4pi)");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void apply_key(RunManifest& m, int line, const std::string& key,
               const std::string& value) {
  if (key == "n") {
    const long n = parse_int(line, key, value);
    if (n < 16 || n % 2 != 0)
      throw ConfigError(line, "n must be even and >= 16");
    m.config.n = static_cast<int>(n);
  } else if (key == "dt") {
    if (value == "auto") {
      m.config.dt.reset();
    } else {
      const double dt = parse_double(line, key, value);
      if (!(dt > 0.0)) throw ConfigError(line, "dt must be positive");
      m.config.dt = dt;
    }
  } else if (key == "t_end") {
    const double t = parse_double(line, key, value);
    if (!(t > 0.0)) throw ConfigError(line, "t_end must be positive");
    m.config.t_end = t;
  } else if (key == "save_every") {
    if (value == "auto") {
      m.config.save_every.reset();
    } else {
      const long s = parse_int(line, key, value);
      if (s < 1) throw ConfigError(line, "save_every must be >= 1");
      m.config.save_every = static_cast<int>(s);
    }
  } else if (key == "cfl_safety") {
    const double c = parse_double(line, key, value);
    if (!(c > 0.0 && c < 1.0))
      throw ConfigError(line, "cfl_safety must lie in (0, 1)");
    m.config.cfl_safety = c;
  } else if (key == "initial") {
    if (value == "round") {
      m.config.initial.kind = InitialKind::Round;
    } else if (value == "l2") {
      m.config.initial.kind = InitialKind::L2;
    } else if (value == "l3") {
      m.config.initial.kind = InitialKind::L3;
    } else if (value == "cos") {
      m.config.initial.kind = InitialKind::Cos;
    } else if (value.rfind("custom:", 0) == 0) {
      m.config.initial.kind = InitialKind::Custom;
      m.config.initial.custom_path = value.substr(7);
      if (m.config.initial.custom_path.empty())
        throw ConfigError(line, "custom initial needs a path: custom:PATH");
    } else {
      throw ConfigError(line, "initial must be one of round, l2, l3, cos, "
                              "custom:PATH; got '" + value + "'");
    }
  } else if (key == "amplitude") {
    const double a = parse_double(line, key, value);
    if (!std::isfinite(a))
      throw ConfigError(line, "amplitude must be finite");
    m.config.initial.amplitude = a;
  } else if (key == "a_grid") {
    if (value == "auto")
      m.a_grid.clear();
    else
      m.a_grid = parse_a_grid(line, value);
  } else if (key == "seed") {
    const long s = parse_int(line, key, value);
    if (s < 0) throw ConfigError(line, "seed must be nonnegative");
    m.seed = static_cast<std::uint64_t>(s);
  } else if (key == "output_dir") {
    if (value.empty()) throw ConfigError(line, "output_dir must be nonempty");
    m.output_dir = value;
  } else if (key == "tol_gb" || key == "tol_cf" || key == "tol_bound") {
    const double t = parse_double(line, key, value);
    if (!(t > 0.0)) throw ConfigError(line, key + " must be positive");
    if (key == "tol_gb") m.tol_gb = t;
    if (key == "tol_cf") m.tol_cf = t;
    if (key == "tol_bound") m.tol_bound = t;
  } else {
    throw ConfigError(line, "unknown key '" + key + "'");
  }
}

}  // namespace

RunManifest parse_config(const std::string& text) {
  RunManifest m;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError(line_no, "expected key=value, got '" + tok + "'");
      apply_key(m, line_no, tok.substr(0, eq), tok.substr(eq + 1));
    }
  }
  return m;
}

std::vector<double> load_custom_initial(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open initial-condition file: " + path);
  std::vector<double> u;
  double v = 0.0;
  while (in >> v) u.push_back(v);
  if (!in.eof())
    throw std::runtime_error("malformed number in initial-condition file: " +
                             path);
  if (u.empty())
    throw std::runtime_error("initial-condition file is empty: " + path);
  return u;
}

RunManifest load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  RunManifest m = parse_config(buf.str());
  if (m.config.initial.kind == InitialKind::Custom)
    m.config.initial.custom_u =
        load_custom_initial(m.config.initial.custom_path);
  return m;
}

}  // namespace sphereflow
