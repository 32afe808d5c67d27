// Acceptance gate: one line per criterion, nonzero exit when any fails.
// argv[1] is the path to the command-line binary (for the determinism check).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "wkam/io.hpp"
#include "wkam/mather.hpp"
#include "wkam/oracle.hpp"

using namespace wkam;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %2d %-28s %s  (%s)\n", number, name.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double now_minus(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScalarField random_field(const GridSpec& g, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, amp);
  ScalarField f = ScalarField::zeros(g, Parity::odd);
  for (std::size_t idx : g.sites(Parity::odd)) f.values[idx] = u(rng);
  return f;
}

ControlPolicy random_periodic_policy(const GridSpec& g, std::uint64_t seed, double frac) {
  std::mt19937_64 rng(seed);
  double cap = frac / (g.d * g.lambda);
  std::uniform_real_distribution<double> u(-cap, cap);
  ControlPolicy pol;
  pol.grid = g;
  pol.level0 = 0;
  pol.periodic = true;
  for (long long k = 0; k < 2 * g.K; ++k) {
    VectorField f = VectorField::zeros(g, g.level_parity(k));
    for (std::size_t idx : g.sites(f.parity))
      for (int a = 0; a < g.d; ++a) f.at_index(idx)[a] = u(rng);
    pol.levels.push_back(std::move(f));
  }
  return pol;
}

double linear_fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

// ---------------------------------------------------------------------------

void criterion_1_duality() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  {
    auto mech = builtin_model("mechanical-1d");
    GridSpec g = GridSpec::create(1, 4, 8);
    ScalarField v = random_field(g, 11, 0.4 * g.h);
    std::vector<double> c = {0.3};
    ScalarField vn = step_backward_scheme(v, 0.0, c, mech);
    std::vector<int> m(1);
    for (std::size_t idx : g.sites(Parity::even)) {
      g.coords_of(idx, m);
      worst = std::max(worst, std::abs(vn.values[idx] - brute_force_step_value(v, m, 0.0, c, mech)));
    }
  }
  {
    auto mech2 = builtin_model("mechanical-2d");
    GridSpec g = GridSpec::create(2, 2, 4);
    ScalarField v = random_field(g, 12, 0.4 * g.h);
    std::vector<double> c = {0.3, -0.2};
    ScalarField vn = step_backward_scheme(v, 0.0, c, mech2);
    std::vector<int> m(2);
    for (std::size_t idx : g.sites(Parity::even)) {
      g.coords_of(idx, m);
      worst = std::max(worst, std::abs(vn.values[idx] - brute_force_step_value(v, m, 0.0, c, mech2)));
    }
  }
  double secs = now_minus(t0);
  report(1, "duality-oracle", worst <= 1e-8 && secs < 60.0,
         "max gap " + fmt(worst) + ", " + fmt(secs) + "s");
}

void criterion_2_path_exactness() {
  GridSpec g = GridSpec::create(1, 2, 2);
  auto mech = builtin_model("mechanical-1d");
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ControlPolicy pol = random_periodic_policy(g, rng(), 0.9);
    long long l = 1 + static_cast<long long>(rng() % 12);
    ScalarField v0 = random_field(g, rng(), 0.5);
    std::vector<double> c = {std::uniform_real_distribution<double>(-0.5, 0.5)(rng)};
    std::vector<std::size_t> starts = g.sites(g.level_parity(l + 1));
    std::vector<int> m(1);
    g.coords_of(starts[rng() % starts.size()], m);
    double exact = enumerate_paths_value(v0, pol, m, l, c, mech);
    double prop = action_functional(v0, pol, m, l, c, mech);
    worst = std::max(worst, std::abs(exact - prop));
  }
  report(2, "path-measure-exactness", worst <= 1e-12, "max gap " + fmt(worst));
}

void criterion_3_optimality() {
  GridSpec g = GridSpec::create(1, 4, 8);
  auto mech = builtin_model("mechanical-1d");
  std::mt19937_64 rng(31);
  std::vector<double> c = {0.2};
  long long l = 10;
  ScalarField v0 = random_field(g, rng(), 0.4 * g.h);
  IvpSolution sol = solve_ivp(v0, l + 1, c, mech);
  std::vector<VectorField> xis = minimizing_control_field(sol, mech);
  ControlPolicy star{g, xis, 1, false};

  double worst_eq = 0.0;
  std::vector<int> m(1);
  for (std::size_t idx : g.sites(g.level_parity(l + 1))) {
    g.coords_of(idx, m);
    double action = action_functional(v0, star, m, l, c, mech);
    worst_eq = std::max(worst_eq, std::abs(action - sol.levels.back().values[idx]));
  }

  std::vector<std::size_t> starts = g.sites(g.level_parity(l + 1));
  g.coords_of(starts[0], m);
  double best = action_functional(v0, star, m, l, c, mech);
  double cap = 1.0 / (g.d * g.lambda);
  bool minimal = true;
  for (int trial = 0; trial < 50; ++trial) {
    ControlPolicy pert = star;
    for (auto& f : pert.levels)
      for (double& z : f.values) {
        z += std::uniform_real_distribution<double>(-0.3, 0.3)(rng);
        z = std::clamp(z, -cap + 1e-9, cap - 1e-9);
      }
    if (action_functional(v0, pert, m, l, c, mech) < best - 1e-10) minimal = false;
  }
  report(3, "minimizing-control", worst_eq <= 1e-10 && minimal,
         "scheme gap " + fmt(worst_eq) + std::string(minimal ? ", minimal" : ", NOT minimal"));
}

void criterion_4_mass() {
  GridSpec g = GridSpec::create(1, 4, 8);
  std::mt19937_64 rng(47);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    ControlPolicy pol = random_periodic_policy(g, rng(), 0.8);
    std::vector<int> start = {1};
    for (const NodeDistribution& dist :
         propagate_distribution(g, start, 0, pol, 24, WalkDirection::backward))
      worst = std::max(worst, std::abs(dist.total_mass() - 1.0));
    for (MeasureMode mode : {MeasureMode::spacetime, MeasureMode::autonomous}) {
      if (mode == MeasureMode::autonomous) continue;  // random policies are time-dependent
      OccupationMeasure mu = occupation_measure(pol, start, 64, mode, 0.0);
      worst = std::max(worst, std::abs(mu.total_mass - 1.0));
    }
  }
  std::vector<double> zero = {0.0};
  ControlPolicy sym = ControlPolicy::constant(g, zero);
  sym.periodic = true;
  std::vector<int> start = {1};
  OccupationMeasure mu = occupation_measure(sym, start, 256, MeasureMode::autonomous, 0.0);
  worst = std::max(worst, std::abs(mu.total_mass - 1.0));
  report(4, "mass-conservation", worst <= 1e-10, "max drift " + fmt(worst));
}

void criterion_5_variance_sandwich() {
  GridSpec g = GridSpec::create(1, 4, 8);
  std::mt19937_64 rng(53);
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ControlPolicy pol = random_periodic_policy(g, rng(), 0.9);
    std::vector<int> start = {1};
    for (const VarianceLevel& lvl : variance_diagnostic(g, start, 0, pol, 16)) {
      for (int a = 0; a < g.d; ++a) {
        double hat2 = lvl.sigma_hat[static_cast<std::size_t>(a)] *
                      lvl.sigma_hat[static_cast<std::size_t>(a)];
        double tilde = lvl.sigma_tilde[static_cast<std::size_t>(a)];
        if (hat2 > tilde + 1e-14 || tilde > lvl.bound + 1e-12) pass = false;
        worst = std::max(worst, std::max(hat2 - tilde, tilde - lvl.bound));
      }
    }
  }
  report(5, "variance-sandwich", pass, "worst slack violation " + fmt(worst));
}

void criterion_6_semiconcavity() {
  auto mech = builtin_model("mechanical-1d");
  SchemeBounds b = compute_bounds(mech, 0.5, 0.0);
  GridSpec g = GridSpec::create(1, 4, 32);
  bool admissible = validate_step_sizes(b, g).pass;
  std::vector<double> c = {0.0};
  std::mt19937_64 rng(61);
  bool pass = admissible;
  for (int seed = 0; seed < 20 && pass; ++seed) {
    ScalarField v0 = random_field(g, rng(), 0.45 * b.r * g.h);
    IvpSolution sol = solve_ivp(v0, 2 * g.K, c, mech, &b);
    if (!semiconcavity_monitor(sol, b).flagged.empty()) pass = false;
  }
  report(6, "semiconcavity-envelope", pass,
         admissible ? "20 seeds within M(t)" : "step sizes inadmissible");
}

std::vector<PeriodicSolution> free_solutions;  // shared with criteria 8 and 14

void criterion_7_free_exactness() {
  auto free = builtin_model("free");
  GridSpec g = GridSpec::create(1, 2, 16);
  double worst_H = 0.0, worst_res = 0.0, worst_defect = 0.0, worst_rho = 0.0, worst_mass = 0.0;
  for (int i = 0; i < 17; ++i) {
    double cc = -2.0 + 4.0 * i / 16.0;
    std::vector<double> c = {cc};
    EffectiveEstimate est = estimate_effective_hamiltonian(c, free, nullptr, 100, 1e-12, &g);
    worst_H = std::max(worst_H, std::abs(est.H_bar - 0.5 * cc * cc));
    PeriodicSolution sol = find_periodic_solution(c, free, g, 1e-12);
    worst_res = std::max(worst_res, sol.residual);
    MatherApproximation ma = mather_measure(sol, free, {2 * g.K}, 1e-10);
    worst_defect = std::max(worst_defect, std::abs(ma.defect));
    double uniform = 1.0 / static_cast<double>(2 * g.K * g.N);
    for (const auto& node : ma.measure.nodes)
      worst_mass = std::max(worst_mass, std::abs(node.mass - uniform));
    std::vector<double> rho = rotation_vector(sol, free, 2 * g.K);
    worst_rho = std::max(worst_rho, std::abs(rho[0] - cc));
    free_solutions.push_back(std::move(sol));
  }
  bool pass = worst_H <= 1e-12 && worst_res <= 1e-12 && worst_defect <= 1e-10 &&
              worst_mass <= 1e-9 && worst_rho <= 1e-12;
  report(7, "free-model-exactness", pass,
         "H " + fmt(worst_H) + ", res " + fmt(worst_res) + ", defect " + fmt(worst_defect) +
             ", rho " + fmt(worst_rho));
}

void criterion_8_identity() {
  auto free = builtin_model("free");
  auto mech = builtin_model("mechanical-1d");
  GridSpec gm = GridSpec::create(1, 8, 40);
  double worst = 0.0;
  for (const PeriodicSolution& sol : free_solutions)
    if (sol.converged)
      worst = std::max(worst, std::abs(effective_identity_sum(sol, free) - sol.H_bar));
  for (int i = 0; i < 17; ++i) {
    std::vector<double> c = {-2.0 + 4.0 * i / 16.0};
    PeriodicSolution sol = find_periodic_solution(c, mech, gm, 1e-10);
    if (sol.converged)
      worst = std::max(worst, std::abs(effective_identity_sum(sol, mech) - sol.H_bar));
  }
  report(8, "effective-identity", worst <= 1e-8, "max residual " + fmt(worst));
}

void criterion_9_scaling() {
  auto t0 = std::chrono::steady_clock::now();
  auto mech = builtin_model("mechanical-1d");
  std::vector<double> c = {0.0};
  ScalingReport rep = scaling_study(mech, c, {{8, 40}, {16, 80}, {32, 160}, {64, 320}}, 1e-8);
  bool decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].error >= rep.rows[i - 1].error) decreasing = false;
  double secs = now_minus(t0);
  bool pass = rep.oracle_based && decreasing && rep.fitted_slope >= 0.4 && secs < 300.0;
  report(9, "scaling-rate", pass,
         "slope " + fmt(rep.fitted_slope) + ", " + fmt(secs) + "s" +
             (decreasing ? "" : ", errors not decreasing"));
}

EffectiveSurface mech_surface;  // shared with criterion 10

void criterion_10_convexity() {
  auto mech = builtin_model("mechanical-1d");
  GridSpec g = GridSpec::create(1, 8, 40);
  std::vector<double> axis;
  for (int i = 0; i < 17; ++i) axis.push_back(-2.0 + 4.0 * i / 16.0);
  mech_surface = effective_surface(mech, g, {axis}, 1e-10, false);
  double max_bracket = 0.0;
  for (double b : mech_surface.bracket) max_bracket = std::max(max_bracket, b);
  ConvexityReport rep = check_midpoint_convexity(mech_surface, 1e-8 + 2.0 * max_bracket);
  report(10, "midpoint-convexity", rep.pass, "worst violation " + fmt(rep.worst_violation));
}

void criterion_11_rotation() {
  auto mech = builtin_model("mechanical-1d");
  GridSpec g = GridSpec::create(1, 64, 320);
  CellProblem1D cp = cell_problem_1d(mech, 0.0);
  double worst_flat = 0.0;
  for (double cc : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    if (std::abs(cc) >= 0.8 * cp.c0) continue;
    PeriodicSolution sol = find_periodic_solution({&cc, 1}, mech, g, 1e-10);
    std::vector<double> rho = rotation_vector(sol, mech, 50ll * 2 * g.K);
    worst_flat = std::max(worst_flat, std::abs(rho[0]));
  }
  double worst_super = 0.0;
  for (double cc : {1.5, 1.9}) {
    std::vector<double> axis = {cc - 0.05, cc, cc + 0.05};
    EffectiveSurface s = effective_surface(mech, g, {axis}, 1e-10, false);
    std::vector<int> idx = {1};
    FdGradient fd = fd_gradient(s, idx);
    PeriodicSolution sol = find_periodic_solution({&cc, 1}, mech, g, 1e-10);
    std::vector<double> rho = rotation_vector(sol, mech, 50ll * 2 * g.K);
    worst_super = std::max(worst_super, std::abs(rho[0] - fd.grad[0]));
  }
  bool pass = worst_flat <= 5e-2 && worst_super <= 5e-2;
  report(11, "rotation-vs-gradient", pass,
         "flat " + fmt(worst_flat) + ", supercritical gap " + fmt(worst_super));
}

MatherApproximation small_amp_mather;  // shared with criterion 14
PeriodicSolution small_amp_solution;

void criterion_12_defect_bound() {
  auto mech = builtin_model("mechanical-1d", {{"amplitude", 0.05}});
  GridSpec g = GridSpec::create(1, 4, 16);
  std::vector<double> c = {0.0};
  small_amp_solution = find_periodic_solution(c, mech, g, 1e-11);
  std::vector<long long> schedule;
  for (long long p : {1, 4, 16, 64}) schedule.push_back(p * 2 * g.K);
  small_amp_mather = mather_measure(small_amp_solution, mech, schedule, 1e-6);
  bool bound_ok = true;
  for (std::size_t i = 0; i < small_amp_mather.defects.size(); ++i)
    if (std::abs(small_amp_mather.defects[i]) > small_amp_mather.defect_bounds[i] + 1e-12)
      bound_ok = false;
  bool pass = bound_ok && small_amp_mather.converged &&
              std::abs(small_amp_mather.defect) <= 1e-6;
  report(12, "mather-defect-bound", pass,
         "final defect " + fmt(std::abs(small_amp_mather.defect)) +
             (bound_ok ? "" : ", bound violated"));
}

void criterion_13_holonomic() {
  GridSpec g = GridSpec::create(1, 4, 8);
  std::mt19937_64 rng(71);
  ControlPolicy pol = random_periodic_policy(g, 99, 0.8);
  std::vector<int> start = {1};
  std::vector<long long> horizons = {2 * g.K, 4 * g.K, 8 * g.K, 16 * g.K};
  std::vector<OccupationMeasure> mus;
  for (long long l : horizons)
    mus.push_back(occupation_measure(pol, start, l, MeasureMode::spacetime, 0.0));
  bool pass = true;
  double worst_slope = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ScalarField> tf;
    for (long long k = 0; k < 2 * g.K; ++k) {
      ScalarField f = ScalarField::zeros(g, g.level_parity(k));
      for (std::size_t idx : g.sites(f.parity))
        f.values[idx] = std::uniform_real_distribution<double>(-1, 1)(rng);
      tf.push_back(std::move(f));
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < horizons.size(); ++i) {
      double defect = holonomic_check(mus[i], tf);
      if (defect < 1e-13) continue;
      xs.push_back(std::log(g.tau * static_cast<double>(horizons[i])));
      ys.push_back(std::log(defect));
    }
    if (xs.size() < 3) continue;  // defect already at round-off
    double slope = linear_fit_slope(xs, ys);
    worst_slope = std::min(worst_slope, -slope);
    if (slope > -0.7) pass = false;
  }
  report(13, "holonomic-decay", pass, "decay exponents all >= 0.7");
}

void criterion_14_aubry_containment() {
  auto free = builtin_model("free");
  auto mech = builtin_model("mechanical-1d", {{"amplitude", 0.05}});
  double worst = 0.0;
  bool pass = true;
  for (const PeriodicSolution& sol : free_solutions) {
    MatherApproximation ma = mather_measure(sol, free, {2 * sol.grid.K}, 1e-8);
    AubrySet A = aubry_set({sol}, free, 1e-6);
    ContainmentReport rep = mather_support_in_aubry(ma.measure, A);
    worst = std::max(worst, rep.worst_mismatch);
    if (!rep.pass) pass = false;
  }
  AubrySet A = aubry_set({small_amp_solution}, mech, 1e-6);
  ContainmentReport rep = mather_support_in_aubry(small_amp_mather.measure, A);
  worst = std::max(worst, rep.worst_mismatch);
  if (!rep.pass) pass = false;
  report(14, "aubry-containment", pass, "worst control mismatch " + fmt(worst));
}

void criterion_15_long_time() {
  auto mech = builtin_model("mechanical-1d");
  GridSpec g = GridSpec::create(1, 8, 40);
  std::vector<double> c = {0.0};
  std::mt19937_64 rng(83);
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField v0 = random_field(g, rng(), 0.4 * g.h);
    LongTimeReport rep = long_time_convergence(v0, c, mech, 400000, 1e-13);
    if (!rep.monotone) pass = false;
    worst = std::max(worst, rep.final_even_distance);
    if (rep.final_even_distance > 1e-8) pass = false;
  }
  report(15, "autonomous-long-time", pass, "max terminal distance " + fmt(worst));
}

void criterion_16_uniqueness() {
  auto mech = builtin_model("mechanical-1d");
  GridSpec g = GridSpec::create(1, 8, 40);
  std::vector<double> c = {0.3};
  std::mt19937_64 rng(89);
  std::vector<EffectiveEstimate> ests;
  ests.push_back(estimate_effective_hamiltonian(c, mech, nullptr, 20000, 1e-10, &g));
  for (int i = 0; i < 5; ++i) {
    ScalarField v0 = random_field(g, rng(), 0.4 * g.h);
    ests.push_back(estimate_effective_hamiltonian(c, mech, &v0, 20000, 1e-10, &g));
  }
  double max_bracket = 0.0, spread = 0.0;
  for (const auto& e : ests) max_bracket = std::max(max_bracket, e.bracket_width());
  for (const auto& a : ests)
    for (const auto& b : ests) spread = std::max(spread, std::abs(a.H_bar - b.H_bar));
  bool pass = spread <= 2.0 * max_bracket;
  report(16, "effective-uniqueness", pass,
         "spread " + fmt(spread) + " vs 2x bracket " + fmt(2.0 * max_bracket));
}

bool run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

std::map<std::string, std::string> slurp_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    out[entry.path().filename().string()] = ss.str();
  }
  return out;
}

void criterion_17_determinism(const char* cli_path) {
  if (!cli_path) {
    report(17, "cli-determinism", false, "no CLI binary path supplied");
    return;
  }
  fs::path work = fs::temp_directory_path() / "wkam-acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(work / name) << body;
  };
  write("solve.json", R"({"model": {"name": "mechanical-1d"}, "grid": {"d": 1, "N": 4, "K": 32},
    "c": [0.2], "solve": {"v0": "random"}})");
  write("eff.json", R"({"model": {"name": "free"}, "grid": {"d": 1, "N": 2, "K": 16},
    "c": [0.5], "effective": {"points": 9},
    "mather": {"periods": [1, 4], "rotation_periods": 5}})");
  write("conv.json", R"({"model": {"name": "mechanical-1d"}, "grid": {"d": 1, "N": 4, "K": 16},
    "c": [0.0], "convergence": {"grids": [[4, 20], [8, 40]]}})");

  struct Run {
    std::string config, args;
  };
  std::vector<Run> runs = {
      {"solve.json", "--seed 7 solve"},
      {"eff.json", "effective --verify"},
      {"eff.json", "mather"},
      {"conv.json", "convergence"},
  };
  std::string cli = std::string("\"") + cli_path + "\"";
  bool pass = true;
  std::string detail = "all commands byte-identical";
  for (std::size_t i = 0; i < runs.size() && pass; ++i) {
    fs::path a = work / ("a" + std::to_string(i));
    fs::path b = work / ("b" + std::to_string(i));
    std::string arga = "--out " + a.string();
    std::string argb = "--out " + b.string();
    // flags must precede the subcommand; splice --out after --config pair
    std::string cfg = "--config " + (work / runs[i].config).string();
    if (!run_cli(cli, cfg + " " + arga + " " + runs[i].args) ||
        !run_cli(cli, cfg + " " + argb + " " + runs[i].args)) {
      pass = false;
      detail = "command failed: " + runs[i].args;
      break;
    }
    if (slurp_dir(a) != slurp_dir(b)) {
      pass = false;
      detail = "outputs differ: " + runs[i].args;
    }
  }
  report(17, "cli-determinism", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  criterion_1_duality();
  criterion_2_path_exactness();
  criterion_3_optimality();
  criterion_4_mass();
  criterion_5_variance_sandwich();
  criterion_6_semiconcavity();
  criterion_7_free_exactness();
  criterion_8_identity();
  criterion_9_scaling();
  criterion_10_convexity();
  criterion_11_rotation();
  criterion_12_defect_bound();
  criterion_13_holonomic();
  criterion_14_aubry_containment();
  criterion_15_long_time();
  criterion_16_uniqueness();
  criterion_17_determinism(argc > 1 ? argv[1] : nullptr);

  std::printf("%s: %d of 17 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED",
              failures);
  return failures == 0 ? 0 : 1;
}
