#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphereflow/driver.hpp"
#include "sphereflow/manifest.hpp"

namespace {

sphereflow::RunManifest make_manifest(const std::string& config_path,
                                      const std::string& out_dir,
                                      long long seed, bool seed_set) {
  sphereflow::RunManifest m;
  if (!config_path.empty()) m = sphereflow::load_config_file(config_path);
  if (!out_dir.empty()) m.output_dir = out_dir;
  if (seed_set) m.seed = static_cast<std::uint64_t>(seed);
  return m;
}

std::vector<int> parse_grids(const std::string& list) {
  std::vector<int> grids;
  std::size_t pos = 0;
  while (pos < list.size()) {
    const auto comma = list.find(',', pos);
    const std::string item = list.substr(pos, comma - pos);
    grids.push_back(std::stoi(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return grids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sphereflow: normalized curvature flow on the two-sphere with "
      "isoperimetric bound checks"};
  app.require_subcommand(1);

  std::string config_path, out_dir, grids_list;
  long long seed = 0;
  double a_value = 2 * 3.14159265358979323846;
  double t_value = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file (key=value)");
    cmd->add_option("--out", out_dir, "output directory override");
    cmd->add_option("--seed", seed, "seed override");
  };

  CLI::App* sim = app.add_subcommand(
      "simulate", "run the flow, all checks, and write series.csv");
  add_common(sim);

  CLI::App* conv = app.add_subcommand(
      "convergence", "grid-refinement study of kappa and the curvature "
                     "integral");
  add_common(conv);
  conv->add_option("--grids", grids_list, "comma list, e.g. 64,128,256")
      ->required();

  CLI::App* orc = app.add_subcommand(
      "oracle", "compare a curve search against the latitude circle");
  add_common(orc);
  orc->add_option("--a", a_value, "enclosed area")->required();
  orc->add_option("--t", t_value, "flow time");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = sim->parsed() ? sim : conv->parsed() ? conv : orc;
    const bool seed_set = active->count("--seed") > 0;
    const sphereflow::RunManifest manifest =
        make_manifest(config_path, out_dir, seed, seed_set);
    if (sim->parsed()) return sphereflow::simulate_command(manifest);
    if (conv->parsed())
      return sphereflow::convergence_command(manifest,
                                             parse_grids(grids_list));
    if (orc->parsed())
      return sphereflow::oracle_command(manifest, a_value, t_value);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 3;
}
