// Command-line front end: configuration-driven experiments with deterministic
// CSV/JSON artifacts. One subcommand per run; outputs are byte-identical
// across repeated runs with the same config and seed.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>

#include "wkam/io.hpp"
#include "wkam/mather.hpp"
#include "wkam/oracle.hpp"

namespace {

namespace fs = std::filesystem;
using wkam::io::json;

enum ExitCode : int {
  exit_ok = 0,
  exit_runtime = 1,
  exit_config = 2,
  exit_cfl = 3,
  exit_inadmissible = 4,
  exit_strict = 5,
};

struct GlobalOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  bool strict = false;
  bool force = false;
};

wkam::HamiltonianModel model_from_config(const json& cfg) {
  std::string name = wkam::io::require_string(cfg, "model.name");
  std::map<std::string, double> params;
  if (cfg.contains("model") && cfg["model"].contains("params")) {
    const json& p = cfg["model"]["params"];
    if (!p.is_object()) throw wkam::io::ConfigError("config field is not a table: model.params");
    for (auto it = p.begin(); it != p.end(); ++it) {
      if (!it.value().is_number())
        throw wkam::io::ConfigError("config field is not a number: model.params." + it.key());
      params[it.key()] = it.value().get<double>();
    }
  }
  return wkam::builtin_model(name, params);
}

wkam::GridSpec grid_from_config(const json& cfg) {
  int d = static_cast<int>(wkam::io::require_integer(cfg, "grid.d"));
  int N = static_cast<int>(wkam::io::require_integer(cfg, "grid.N"));
  int K = static_cast<int>(wkam::io::require_integer(cfg, "grid.K"));
  return wkam::GridSpec::create(d, N, K);
}

std::vector<double> c_from_config(const json& cfg, int d) {
  const json& node = wkam::io::require_node(cfg, "c");
  if (!node.is_array() || static_cast<int>(node.size()) != d)
    throw wkam::io::ConfigError("config field c must be an array of length grid.d");
  std::vector<double> c;
  for (const auto& v : node) {
    if (!v.is_number()) throw wkam::io::ConfigError("config field c holds a non-number");
    c.push_back(v.get<double>());
  }
  return c;
}

double number_or(const json& cfg, const std::string& path, double fallback) {
  try {
    wkam::io::require_node(cfg, path);
  } catch (const wkam::io::ConfigError&) {
    return fallback;
  }
  return wkam::io::require_number(cfg, path);
}

long long integer_or(const json& cfg, const std::string& path, long long fallback) {
  try {
    wkam::io::require_node(cfg, path);
  } catch (const wkam::io::ConfigError&) {
    return fallback;
  }
  return wkam::io::require_integer(cfg, path);
}

std::string string_or(const json& cfg, const std::string& path, const std::string& fallback) {
  try {
    wkam::io::require_node(cfg, path);
  } catch (const wkam::io::ConfigError&) {
    return fallback;
  }
  return wkam::io::require_string(cfg, path);
}

json run_metadata(const GlobalOpts& g, const wkam::GridSpec& grid, const std::string& model) {
  json meta;
  meta["grid"] = {{"d", grid.d}, {"N", grid.N}, {"K", grid.K}};
  meta["model"] = model;
  meta["seed"] = g.seed_set ? json(g.seed) : json(nullptr);
  meta["threads"] = g.threads;
  return meta;
}

wkam::ScalarField initial_field(const json& cfg, const GlobalOpts& g,
                                const wkam::GridSpec& grid) {
  std::string kind = string_or(cfg, "solve.v0", "zero");
  wkam::ScalarField v0 = wkam::ScalarField::zeros(grid, wkam::Parity::odd);
  if (kind == "zero") return v0;
  if (kind == "random") {
    if (!g.seed_set)
      throw wkam::io::ConfigError("solve.v0 = random requires --seed (determinism contract)");
    double slope = number_or(cfg, "solve.v0_slope", 0.4);
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> u(0.0, slope * grid.h);
    for (std::size_t idx : grid.sites(wkam::Parity::odd)) v0.values[idx] = u(rng);
    return v0;
  }
  if (kind == "file") {
    fs::path path = wkam::io::require_string(cfg, "solve.v0_file");
    std::ifstream in(path);
    if (!in) throw wkam::io::ConfigError("cannot read solve.v0_file: " + path.string());
    std::string header;
    std::getline(in, header);
    std::string line;
    std::vector<int> m(grid.d);
    while (std::getline(in, line)) {
      std::stringstream ss(line);
      std::string cell;
      std::getline(ss, cell, ',');  // level, ignored
      for (int a = 0; a < grid.d; ++a) {
        std::getline(ss, cell, ',');
        m[static_cast<std::size_t>(a)] = std::stoi(cell);
      }
      std::getline(ss, cell, ',');
      v0.at(m) = std::stod(cell);
    }
    return v0;
  }
  throw wkam::io::ConfigError("solve.v0 must be zero, random, or file");
}

int cmd_solve(const json& cfg, const GlobalOpts& g) {
  wkam::HamiltonianModel model = model_from_config(cfg);
  wkam::GridSpec grid = grid_from_config(cfg);
  std::vector<double> c = c_from_config(cfg, grid.d);
  long long steps = integer_or(cfg, "solve.steps", 2 * grid.K);
  double r = number_or(cfg, "bounds.r", 0.5);
  double c_max = number_or(cfg, "bounds.c_max", 0.0);

  wkam::SchemeBounds bounds = wkam::compute_bounds(model, r, c_max);
  wkam::StepSizeReport steps_ok = wkam::validate_step_sizes(bounds, grid);
  if (!steps_ok.pass && !g.force) {
    std::cerr << "inadmissible step sizes; failing checks:";
    for (const auto& chk : steps_ok.checks)
      if (!chk.pass) std::cerr << ' ' << chk.name;
    std::cerr << "\nuse --force to run anyway (monitors stay on)\n";
    return exit_inadmissible;
  }

  wkam::ScalarField v0 = initial_field(cfg, g, grid);
  wkam::IvpSolution sol;
  try {
    sol = wkam::solve_ivp(v0, steps, c, model, &bounds);
  } catch (const wkam::CflViolation& e) {
    std::cerr << "cfl violation at level " << e.level << ": " << e.what() << '\n';
    return exit_cfl;
  }

  fs::create_directories(g.out_dir);
  fs::path levels_path = fs::path(g.out_dir) / "levels.csv";
  fs::path monitors_path = fs::path(g.out_dir) / "monitors.csv";
  wkam::io::write_levels_csv(levels_path, sol.levels, sol.level0);
  wkam::io::write_monitors_csv(monitors_path, sol.monitors, sol.level0);

  json extra = run_metadata(g, grid, model.name);
  extra["c"] = c;
  extra["steps"] = steps;
  extra["step_size_checks_pass"] = steps_ok.pass;
  wkam::io::write_sidecar(levels_path, cfg, extra);
  wkam::io::write_sidecar(monitors_path, cfg, extra);
  std::cout << "wrote " << levels_path.string() << " (" << sol.levels.size() << " levels)\n";
  return exit_ok;
}

int cmd_effective(const json& cfg, const GlobalOpts& g, bool verify) {
  wkam::HamiltonianModel model = model_from_config(cfg);
  wkam::GridSpec grid = grid_from_config(cfg);
  double tol = number_or(cfg, "tolerances.fixed_point", 1e-10);
  double identity_tol = number_or(cfg, "tolerances.identity", 1e-8);
  double cmin = number_or(cfg, "effective.c_min", -2.0);
  double cmax = number_or(cfg, "effective.c_max", 2.0);
  long long points = integer_or(cfg, "effective.points", 17);
  if (points < 2) throw wkam::io::ConfigError("effective.points must be at least 2");
  bool with_forward = false;
  if (cfg.contains("effective") && cfg["effective"].contains("with_forward"))
    with_forward = cfg["effective"]["with_forward"].get<bool>();

  std::vector<double> axis;
  for (long long i = 0; i < points; ++i)
    axis.push_back(cmin + (cmax - cmin) * static_cast<double>(i) /
                              static_cast<double>(points - 1));
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(grid.d), axis);

  wkam::EffectiveSurface surface = wkam::effective_surface(model, grid, axes, tol, with_forward);
  wkam::ConvexityReport convexity = wkam::check_midpoint_convexity(surface, 1e-8);

  long long holes = 0;
  double max_identity = 0.0;
  if (verify) {
    std::vector<int> idx(static_cast<std::size_t>(grid.d), 0);
    for (std::size_t flat = 0; flat < surface.size(); ++flat) {
      std::vector<double> c = surface.c_at(idx);
      wkam::PeriodicSolution sol = wkam::find_periodic_solution(c, model, grid, tol);
      double gap = std::abs(wkam::effective_identity_sum(sol, model) - sol.H_bar);
      max_identity = std::max(max_identity, gap);
      if (!sol.converged || gap > identity_tol) ++holes;
      for (int a = grid.d - 1; a >= 0; --a) {
        if (++idx[static_cast<std::size_t>(a)] <
            static_cast<int>(axes[static_cast<std::size_t>(a)].size()))
          break;
        idx[static_cast<std::size_t>(a)] = 0;
      }
    }
    std::cout << "identity residual max " << wkam::io::format_value(max_identity) << " over "
              << surface.size() << " points, " << holes << " failures\n";
  }

  fs::create_directories(g.out_dir);
  fs::path surface_path = fs::path(g.out_dir) / "surface.csv";
  wkam::io::write_surface_csv(surface_path, surface);
  json extra = run_metadata(g, grid, model.name);
  extra["convexity"] = {{"pass", convexity.pass},
                        {"worst_violation", convexity.worst_violation}};
  extra["tol"] = tol;
  if (verify) {
    extra["verify"] = {{"max_identity_residual", max_identity}, {"failures", holes}};
  }
  wkam::io::write_sidecar(surface_path, cfg, extra);
  std::cout << "wrote " << surface_path.string() << " (" << surface.size() << " points)\n";
  if (g.strict && (holes > 0 || !convexity.pass)) return exit_strict;
  return exit_ok;
}

int cmd_mather(const json& cfg, const GlobalOpts& g) {
  wkam::HamiltonianModel model = model_from_config(cfg);
  wkam::GridSpec grid = grid_from_config(cfg);
  std::vector<double> c = c_from_config(cfg, grid.d);
  double tol = number_or(cfg, "tolerances.fixed_point", 1e-10);
  double defect_tol = number_or(cfg, "tolerances.defect", 1e-6);
  double support_threshold = number_or(cfg, "mather.support_threshold", 1e-9);

  std::vector<long long> horizons;
  if (cfg.contains("mather") && cfg["mather"].contains("periods")) {
    for (const auto& p : cfg["mather"]["periods"])
      horizons.push_back(p.get<long long>() * 2 * grid.K);
  } else {
    for (long long p : {1, 4, 16, 64}) horizons.push_back(p * 2 * grid.K);
  }

  wkam::PeriodicSolution sol = wkam::find_periodic_solution(c, model, grid, tol);
  wkam::MatherApproximation ma =
      wkam::mather_measure(sol, model, horizons, defect_tol, true, support_threshold);
  long long rot_horizon = integer_or(cfg, "mather.rotation_periods", 50) * 2 * grid.K;
  std::vector<double> rho = wkam::rotation_vector(sol, model, rot_horizon);
  wkam::AubrySet aubry = wkam::aubry_set({sol}, model, 1e-6);
  wkam::ContainmentReport containment = wkam::mather_support_in_aubry(ma.measure, aubry);

  fs::create_directories(g.out_dir);
  fs::path measure_path = fs::path(g.out_dir) / "measure.csv";
  fs::path aubry_path = fs::path(g.out_dir) / "aubry.csv";
  wkam::io::write_measure_csv(measure_path, ma.measure);
  wkam::io::write_aubry_csv(aubry_path, aubry);

  json extra = run_metadata(g, grid, model.name);
  extra["c"] = c;
  extra["H_bar"] = sol.H_bar;
  extra["action"] = ma.action;
  extra["defect"] = ma.defect;
  extra["defect_bound"] = ma.defect_bound;
  extra["defect_converged"] = ma.converged;
  extra["rotation_vector"] = rho;
  extra["aubry_containment"] = {{"pass", containment.pass},
                                {"worst_mismatch", containment.worst_mismatch},
                                {"support_nodes", containment.checked}};
  wkam::io::write_sidecar(measure_path, cfg, extra);
  wkam::io::write_sidecar(aubry_path, cfg, extra);
  std::cout << "wrote " << measure_path.string() << " (defect "
            << wkam::io::format_value(ma.defect) << ")\n";
  if (g.strict && !ma.converged) return exit_strict;
  return exit_ok;
}

int cmd_convergence(const json& cfg, const GlobalOpts& g) {
  wkam::HamiltonianModel model = model_from_config(cfg);
  std::vector<double> c = c_from_config(cfg, model.d);
  double tol = number_or(cfg, "tolerances.fixed_point", 1e-9);

  const json& grids_node = wkam::io::require_node(cfg, "convergence.grids");
  if (!grids_node.is_array() || grids_node.empty())
    throw wkam::io::ConfigError("convergence.grids must be a non-empty array of [N, K] pairs");
  std::vector<std::pair<int, int>> grids;
  for (const auto& pair : grids_node) {
    if (!pair.is_array() || pair.size() != 2)
      throw wkam::io::ConfigError("convergence.grids entries must be [N, K] pairs");
    grids.emplace_back(pair[0].get<int>(), pair[1].get<int>());
  }

  wkam::ScalingReport report = wkam::scaling_study(model, c, grids, tol);

  fs::create_directories(g.out_dir);
  fs::path table_path = fs::path(g.out_dir) / "convergence.csv";
  wkam::io::write_scaling_csv(table_path, report);
  json extra;
  extra["model"] = model.name;
  extra["c"] = c;
  extra["fitted_slope"] = report.fitted_slope;
  extra["oracle_based"] = report.oracle_based;
  extra["threads"] = g.threads;
  wkam::io::write_sidecar(table_path, cfg, extra);
  std::cout << "wrote " << table_path.string() << " (fitted slope "
            << wkam::io::format_value(report.fitted_slope) << ")\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete weak KAM toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "experiment configuration file (JSON)")
      ->required();
  app.add_option("--out", g.out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed for randomized inputs");
  app.add_option("--threads", g.threads, "worker threads (recorded; execution is sequential)");
  app.add_flag("--strict", g.strict, "nonzero exit on any per-point failure");
  app.add_flag("--force", g.force, "run even when a priori step-size checks fail");

  CLI::App* solve = app.add_subcommand("solve", "run the initial-value scheme");
  CLI::App* effective = app.add_subcommand("effective", "effective Hamiltonian surface");
  bool verify = false;
  effective->add_flag("--verify", verify,
                      "re-check the averaged-Hamiltonian identity per c value");
  CLI::App* mather = app.add_subcommand("mather", "Mather measure, rotation vector, Aubry set");
  CLI::App* convergence = app.add_subcommand("convergence", "grid-refinement study");

  CLI11_PARSE(app, argc, argv);
  g.seed_set = seed_opt->count() > 0;

  try {
    json cfg = wkam::io::load_config(g.config_path);
    if (solve->parsed()) return cmd_solve(cfg, g);
    if (effective->parsed()) return cmd_effective(cfg, g, verify);
    if (mather->parsed()) return cmd_mather(cfg, g);
    if (convergence->parsed()) return cmd_convergence(cfg, g);
  } catch (const wkam::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const wkam::CflViolation& e) {
    std::cerr << "cfl violation: " << e.what() << '\n';
    return exit_cfl;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_runtime;
  }
  return exit_runtime;
}
