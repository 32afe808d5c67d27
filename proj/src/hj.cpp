#include "wkam/hj.hpp"

#include <cmath>

namespace wkam {

namespace {

// Shared step core; sign = -1 backward (next level k+1), +1 forward (k-1).
ScalarField step_core(const ScalarField& v, double t_k, std::span<const double> c,
                      const HamiltonianModel& model, const NeighborTable& nt, int sign,
                      double* max_hp_out) {
  const GridSpec& g = v.grid;
  ScalarField out = ScalarField::zeros(g, opposite(v.parity));
  double inv2d = 1.0 / (2.0 * g.d);
  double inv2h = 1.0 / (2.0 * g.h);
  std::vector<int> m(g.d);
  std::vector<double> x(g.d), p(g.d), hp(g.d);
  double max_hp = 0.0;
  for (std::size_t idx = 0; idx < g.num_sites(); ++idx) {
    if (g.site_parity(idx) != out.parity) continue;
    double avg = 0.0;
    for (int a = 0; a < g.d; ++a) {
      double vp = v.values[nt.plus(idx, a)];
      double vm = v.values[nt.minus(idx, a)];
      avg += vp + vm;
      p[a] = c[a] + (vp - vm) * inv2h;
    }
    g.coords_of(idx, m);
    for (int a = 0; a < g.d; ++a) x[a] = g.xcoord(m[a]);
    double Hval = model.H(x, t_k, p);
    if (!std::isfinite(Hval))
      throw std::runtime_error("scheme step: non-finite Hamiltonian value");
    out.values[idx] = avg * inv2d + sign * g.tau * Hval;
    if (max_hp_out) {
      model.Hp(x, t_k, p, hp);
      for (int a = 0; a < g.d; ++a) max_hp = std::max(max_hp, std::abs(hp[a]));
    }
  }
  if (max_hp_out) *max_hp_out = max_hp;
  return out;
}

}  // namespace

ScalarField step_backward_scheme(const ScalarField& v, double t_k, std::span<const double> c,
                                 const HamiltonianModel& model) {
  NeighborTable nt = NeighborTable::build(v.grid);
  return step_core(v, t_k, c, model, nt, -1, nullptr);
}

ScalarField step_forward_scheme(const ScalarField& v, double t_k, std::span<const double> c,
                                const HamiltonianModel& model) {
  NeighborTable nt = NeighborTable::build(v.grid);
  return step_core(v, t_k, c, model, nt, +1, nullptr);
}

double max_slope(const ScalarField& v) {
  VectorField dx = discrete_dx(v);
  double m = 0.0;
  for (std::size_t idx : v.grid.sites(dx.parity))
    for (double comp : dx.at_index(idx)) m = std::max(m, std::abs(comp));
  return m;
}

double semiconcavity_constant(const ScalarField& v) {
  const GridSpec& g = v.grid;
  double best = -std::numeric_limits<double>::infinity();
  double inv4h2 = 1.0 / (4.0 * g.h * g.h);
  std::vector<int> m(g.d);
  for (std::size_t idx : g.sites(v.parity)) {
    g.coords_of(idx, m);
    for (int a = 0; a < g.d; ++a) {
      int orig = m[a];
      m[a] = orig + 2;
      double vp = v.at(m);
      m[a] = orig - 2;
      double vm = v.at(m);
      m[a] = orig;
      best = std::max(best, (vp + vm - 2.0 * v.values[idx]) * inv4h2);
    }
  }
  return best;
}

IvpSolution solve_ivp(const ScalarField& v0, long long steps, std::span<const double> c,
                      const HamiltonianModel& model, const SchemeBounds* bounds,
                      const SolveOptions& opt, long long level0) {
  const GridSpec& g = v0.grid;
  if (static_cast<int>(c.size()) != g.d) throw std::invalid_argument("solve_ivp: c dimension");
  IvpSolution sol;
  sol.grid = g;
  sol.c.assign(c.begin(), c.end());
  sol.level0 = level0;
  NeighborTable nt = NeighborTable::build(g);
  double cap = 1.0 / (g.d * g.lambda);

  ScalarField cur = v0;
  if (opt.record_monitors)
    sol.monitors.push_back({max_slope(cur), semiconcavity_constant(cur), 0.0});
  if (opt.keep_levels) sol.levels.push_back(cur);
  for (long long j = 0; j < steps; ++j) {
    double t_k = g.time(level0 + j);
    double max_hp = 0.0;
    ScalarField next = step_core(cur, t_k, c, model, nt, -1, &max_hp);
    if (opt.check_cfl && max_hp > cap)
      throw CflViolation(level0 + j + 1, "CFL violation: |H_p| exceeds (d*lambda)^-1 at level " +
                                             std::to_string(level0 + j + 1));
    if (opt.record_monitors)
      sol.monitors.push_back({max_slope(next), semiconcavity_constant(next), cap - max_hp});
    cur = std::move(next);
    if (opt.keep_levels) sol.levels.push_back(cur);
  }
  if (!opt.keep_levels) sol.levels.push_back(std::move(cur));
  (void)bounds;
  return sol;
}

ScalarField time_one_map(const ScalarField& v0, std::span<const double> c,
                         const HamiltonianModel& model, long long level0) {
  SolveOptions opt;
  opt.record_monitors = false;
  opt.keep_levels = false;
  IvpSolution sol = solve_ivp(v0, 2LL * v0.grid.K, c, model, nullptr, opt, level0);
  return std::move(sol.levels.back());
}

std::vector<VectorField> minimizing_control_field(const IvpSolution& ivp,
                                                  const HamiltonianModel& model) {
  std::vector<VectorField> out;
  const GridSpec& g = ivp.grid;
  NeighborTable nt = NeighborTable::build(g);
  double inv2h = 1.0 / (2.0 * g.h);
  std::vector<int> m(g.d);
  std::vector<double> x(g.d), p(g.d);
  for (std::size_t lvl = 0; lvl + 1 < ivp.levels.size(); ++lvl) {
    const ScalarField& v = ivp.levels[lvl];
    double t_k = g.time(ivp.level0 + static_cast<long long>(lvl));
    VectorField xi = VectorField::zeros(g, opposite(v.parity));
    for (std::size_t idx : g.sites(xi.parity)) {
      for (int a = 0; a < g.d; ++a)
        p[a] = ivp.c[a] + (v.values[nt.plus(idx, a)] - v.values[nt.minus(idx, a)]) * inv2h;
      g.coords_of(idx, m);
      for (int a = 0; a < g.d; ++a) x[a] = g.xcoord(m[a]);
      model.Hp(x, t_k, p, xi.at_index(idx));
    }
    out.push_back(std::move(xi));
  }
  return out;
}

SemiconcavityReport semiconcavity_monitor(const IvpSolution& ivp, const SchemeBounds& bounds) {
  SemiconcavityReport rep;
  bool below = true;
  for (std::size_t lvl = 0; lvl < ivp.levels.size(); ++lvl) {
    double Mk = semiconcavity_constant(ivp.levels[lvl]);
    double t = ivp.grid.time(ivp.level0 + static_cast<long long>(lvl)) -
               ivp.grid.time(ivp.level0);
    double env = lvl == 0 ? std::numeric_limits<double>::infinity() : bounds.M(t);
    rep.M_k.push_back(Mk);
    rep.envelope.push_back(env);
    if (Mk > env) rep.flagged.push_back(static_cast<int>(lvl));
    if (Mk > bounds.M_plus) below = false;
  }
  rep.below_M_plus_throughout = below;
  return rep;
}

}  // namespace wkam
