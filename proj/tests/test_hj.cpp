#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wkam/hj.hpp"
#include "wkam/oracle.hpp"

using namespace wkam;

namespace {

ScalarField random_field(const GridSpec& g, Parity p, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, amp);
  ScalarField f = ScalarField::zeros(g, p);
  for (std::size_t idx : g.sites(p)) f.values[idx] = u(rng);
  return f;
}

}  // namespace

TEST_CASE("backward step closed forms") {
  GridSpec g = GridSpec::create(1, 2, 4);
  auto free = builtin_model("free");
  ScalarField v = ScalarField::zeros(g, Parity::odd);
  std::vector<double> c = {0.0};
  ScalarField v1 = step_backward_scheme(v, 0.0, c, free);
  for (std::size_t idx : g.sites(Parity::even)) CHECK(v1.values[idx] == 0.0);

  c[0] = 1.0;
  v1 = step_backward_scheme(v, 0.0, c, free);
  for (std::size_t idx : g.sites(Parity::even))
    CHECK(v1.values[idx] == doctest::Approx(-g.tau * 0.5).epsilon(1e-15));

  // 2-node grid: N=1, odd nodes {1}, even {0}; D_x vanishes by wrap
  GridSpec g1 = GridSpec::create(1, 1, 4);
  auto mech = builtin_model("mechanical-1d");
  ScalarField w = ScalarField::zeros(g1, Parity::odd);
  std::vector<int> m = {1};
  w.at(m) = 0.8;
  std::vector<double> c2 = {0.3};
  ScalarField w1 = step_backward_scheme(w, 0.0, c2, mech);
  for (std::size_t idx : g1.sites(Parity::even)) {
    std::vector<int> mm(1);
    g1.coords_of(idx, mm);
    double x = g1.xcoord(mm[0]);
    double expect = 0.8 - g1.tau * mech.H(std::span<const double>(&x, 1), 0.0, c2);
    CHECK(w1.values[idx] == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("forward step mirrors backward") {
  GridSpec g = GridSpec::create(1, 2, 4);
  auto free = builtin_model("free");
  ScalarField v = ScalarField::zeros(g, Parity::odd);
  std::vector<double> c = {1.0};
  ScalarField vf = step_forward_scheme(v, 0.0, c, free);
  for (std::size_t idx : g.sites(Parity::even))
    CHECK(vf.values[idx] == doctest::Approx(g.tau * 0.5).epsilon(1e-15));

  // forward then backward on constant data returns the constant
  ScalarField k = ScalarField::zeros(g, Parity::odd);
  for (std::size_t idx : g.sites(Parity::odd)) k.values[idx] = 2.5;
  ScalarField fwd = step_forward_scheme(k, 0.0, c, free);
  ScalarField back = step_backward_scheme(fwd, 0.0, c, free);
  for (std::size_t idx : g.sites(Parity::odd))
    CHECK(back.values[idx] == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("scheme residual is zero by construction") {
  GridSpec g = GridSpec::create(1, 4, 8);
  auto mech = builtin_model("mechanical-1d");
  ScalarField v = random_field(g, Parity::odd, 4, 0.5 * g.h);
  std::vector<double> c = {0.2};
  ScalarField vn = step_backward_scheme(v, 0.0, c, mech);
  ScalarField dt = discrete_dt(vn, v);
  VectorField dx = discrete_dx(v);
  for (std::size_t idx : g.sites(Parity::even)) {
    std::vector<int> m(1);
    g.coords_of(idx, m);
    double x = g.xcoord(m[0]);
    double p = c[0] + dx.at_index(idx)[0];
    double H = mech.H(std::span<const double>(&x, 1), 0.0, std::span<const double>(&p, 1));
    CHECK(dt.values[idx] + H == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("duality against brute force at every node") {
  auto mech = builtin_model("mechanical-1d");
  GridSpec g = GridSpec::create(1, 4, 8);
  ScalarField v = random_field(g, Parity::odd, 17, 0.4 * g.h);
  std::vector<double> c = {0.3};
  ScalarField vn = step_backward_scheme(v, 0.0, c, mech);
  for (std::size_t idx : g.sites(Parity::even)) {
    std::vector<int> m(1);
    g.coords_of(idx, m);
    double oracle = brute_force_step_value(v, m, 0.0, c, mech);
    CHECK(std::abs(vn.values[idx] - oracle) <= 1e-8);
  }
}

TEST_CASE("solve_ivp free model constant drop and monitors") {
  GridSpec g = GridSpec::create(1, 2, 4);
  auto free = builtin_model("free");
  ScalarField v0 = ScalarField::zeros(g, Parity::odd);
  std::vector<double> c = {1.0};
  IvpSolution sol = solve_ivp(v0, 2 * g.K, c, free);
  CHECK(sol.levels.size() == static_cast<std::size_t>(2 * g.K + 1));
  for (std::size_t idx : g.sites(Parity::odd))
    CHECK(sol.levels.back().values[idx] == doctest::Approx(-0.5).epsilon(1e-14));

  IvpSolution none = solve_ivp(v0, 0, c, free);
  CHECK(none.levels.size() == 1);

  // CFL violation: steep data with large c
  ScalarField steep = ScalarField::zeros(g, Parity::odd);
  std::vector<int> m = {1};
  steep.at(m) = 3.0;
  std::vector<double> big = {4.0};
  CHECK_THROWS_AS(solve_ivp(steep, 4, big, free), CflViolation);
}

TEST_CASE("step commutes with constants and preserves order") {
  GridSpec g = GridSpec::create(1, 4, 8);
  auto mech = builtin_model("mechanical-1d");
  std::vector<double> c = {0.1};
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    ScalarField v = random_field(g, Parity::odd, rng(), 0.5 * g.h);
    ScalarField w = v;
    double a = std::uniform_real_distribution<double>(-2, 2)(rng);
    for (std::size_t idx : g.sites(Parity::odd)) w.values[idx] += a;
    ScalarField sv = step_backward_scheme(v, 0.0, c, mech);
    ScalarField sw = step_backward_scheme(w, 0.0, c, mech);
    for (std::size_t idx : g.sites(Parity::even))
      CHECK(sw.values[idx] == doctest::Approx(sv.values[idx] + a).epsilon(1e-12));

    // order preservation
    ScalarField hi = v;
    for (std::size_t idx : g.sites(Parity::odd))
      hi.values[idx] += std::uniform_real_distribution<double>(0, 0.3)(rng);
    ScalarField shi = step_backward_scheme(hi, 0.0, c, mech);
    for (std::size_t idx : g.sites(Parity::even))
      CHECK(shi.values[idx] >= sv.values[idx] - 1e-13);
  }
}

TEST_CASE("minimizing control field box bound and free-model values") {
  GridSpec g = GridSpec::create(1, 4, 8);
  auto free = builtin_model("free");
  ScalarField v0 = ScalarField::zeros(g, Parity::odd);
  std::vector<double> c = {0.7};
  IvpSolution sol = solve_ivp(v0, 4, c, free);
  auto xis = minimizing_control_field(sol, free);
  CHECK(xis.size() == 4);
  for (const auto& xi : xis)
    for (std::size_t idx : g.sites(xi.parity))
      CHECK(xi.at_index(idx)[0] == doctest::Approx(0.7).epsilon(1e-13));
}

TEST_CASE("semiconcavity monitor on admissible mechanical run") {
  auto mech = builtin_model("mechanical-1d");
  SchemeBounds b = compute_bounds(mech, 0.5, 0.0);
  GridSpec g = GridSpec::create(1, 4, 32);
  REQUIRE(validate_step_sizes(b, g).pass);
  std::vector<double> c = {0.0};
  std::mt19937_64 rng(3);
  for (int seed = 0; seed < 5; ++seed) {
    ScalarField v0 = random_field(g, Parity::odd, rng(), 0.45 * b.r * g.h);
    IvpSolution sol = solve_ivp(v0, 2 * g.K, c, mech, &b);
    SemiconcavityReport rep = semiconcavity_monitor(sol, b);
    CHECK(rep.flagged.empty());
  }
}

TEST_CASE("derivative cap under initial slope bound") {
  auto mech = builtin_model("mechanical-1d");
  SchemeBounds b = compute_bounds(mech, 0.5, 0.0);
  GridSpec g = GridSpec::create(1, 4, 32);
  std::vector<double> c = {0.0};
  ScalarField v0 = random_field(g, Parity::odd, 77, 0.45 * b.r * g.h);
  IvpSolution sol = solve_ivp(v0, 4 * g.K, c, mech, &b);
  for (const auto& mon : sol.monitors) CHECK(mon.max_slope <= b.u_star + 1e-12);
}

TEST_CASE("time-1 map basics and non-expansiveness") {
  GridSpec g = GridSpec::create(1, 4, 16);
  auto mech = builtin_model("mechanical-1d");
  std::vector<double> c = {0.2};
  std::mt19937_64 rng(12);
  ScalarField v = random_field(g, Parity::odd, rng(), 0.3 * g.h);
  ScalarField w = random_field(g, Parity::odd, rng(), 0.3 * g.h);
  ScalarField pv = time_one_map(v, c, mech);
  ScalarField pw = time_one_map(w, c, mech);
  CHECK(pv.parity == Parity::odd);
  double dist0 = 0.0, dist1 = 0.0;
  for (std::size_t idx : g.sites(Parity::odd)) {
    dist0 = std::max(dist0, std::abs(v.values[idx] - w.values[idx]));
    dist1 = std::max(dist1, std::abs(pv.values[idx] - pw.values[idx]));
  }
  CHECK(dist1 <= dist0 + 1e-13);

  auto free = builtin_model("free");
  ScalarField k = ScalarField::zeros(g, Parity::odd);
  for (std::size_t idx : g.sites(Parity::odd)) k.values[idx] = 1.5;
  std::vector<double> cc = {0.6};
  ScalarField pk = time_one_map(k, cc, free);
  for (std::size_t idx : g.sites(Parity::odd))
    CHECK(pk.values[idx] == doctest::Approx(1.5 - 0.18).epsilon(1e-13));
}
