#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphereflow/flow.hpp"

namespace sphereflow {

// Everything one run needs: flow configuration, profile areas, check
// tolerances, oracle seed, and where the outputs go.
struct RunManifest {
  FlowConfig config;
  std::vector<double> a_grid;  // empty: default_a_grid()
  double tol_gb = 1e-3;
  double tol_cf = 1e-8;
  double tol_bound = 1e-4;
  std::uint64_t seed = 12345;
  std::string output_dir = "out";
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parse the flat key=value format ('#' comments, whitespace-separated pairs).
// Keys: n, dt, t_end, save_every, cfl_safety, initial, amplitude, a_grid,
// seed, output_dir, tol_gb, tol_cf, tol_bound. Unknown keys, malformed
// values and invariant violations raise ConfigError with the line number.
RunManifest parse_config(const std::string& text);

// parse_config plus resolution of initial=custom:PATH value files.
RunManifest load_config_file(const std::string& path);

// Read one whitespace-separated conformal-factor value per grid node.
std::vector<double> load_custom_initial(const std::string& path);

}  // namespace sphereflow
