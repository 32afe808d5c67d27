#include "wkam/weakkam.hpp"

#include <cmath>

#include "wkam/oracle.hpp"

namespace wkam {

namespace {

void anchor(ScalarField& v) {
  // subtract the value at the first populated node of v's parity class
  const GridSpec& g = v.grid;
  std::vector<int> origin(g.d, 0);
  if (v.parity == Parity::odd) origin[0] = 1;
  double a = v.at(origin);
  for (std::size_t idx : g.sites(v.parity)) v.values[idx] -= a;
}

// Pointwise drop v - phi(v); its min/max bracket H_bar for backward maps
// (for the forward map the drop of phi~(v) - v brackets H~ the same way).
std::pair<double, double> drop_range(const ScalarField& before, const ScalarField& after,
                                     int sign) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t idx : before.grid.sites(before.parity)) {
    double drop = sign * (before.values[idx] - after.values[idx]);
    lo = std::min(lo, drop);
    hi = std::max(hi, drop);
  }
  return {lo, hi};
}

ScalarField forward_period_map(const ScalarField& v0, std::span<const double> c,
                               const HamiltonianModel& model) {
  const GridSpec& g = v0.grid;
  ScalarField cur = v0;
  for (long long j = 0; j < 2 * g.K; ++j) {
    double t_k = g.time(-j);  // levels 0, -1, ..., -(2K-1)
    cur = step_forward_scheme(cur, t_k, c, model);
  }
  return cur;
}

}  // namespace

EffectiveEstimate estimate_effective_hamiltonian(std::span<const double> c,
                                                 const HamiltonianModel& model,
                                                 const ScalarField* v0, long long max_periods,
                                                 double tol, const GridSpec* grid) {
  if (!v0 && !grid)
    throw std::invalid_argument("estimate_effective_hamiltonian: need v0 or grid");
  ScalarField v = v0 ? *v0 : ScalarField::zeros(*grid, Parity::odd);
  EffectiveEstimate est;
  for (long long period = 1; period <= max_periods; ++period) {
    ScalarField next = time_one_map(v, c, model);
    auto [lo, hi] = drop_range(v, next, +1);
    est.H_bar = 0.5 * (lo + hi);
    est.bracket_lo = lo;
    est.bracket_hi = hi;
    est.periods = period;
    if (hi - lo <= tol) {
      est.converged = true;
      return est;
    }
    v = std::move(next);
    anchor(v);
  }
  return est;
}

EffectiveEstimate estimate_effective_hamiltonian_forward(std::span<const double> c,
                                                         const HamiltonianModel& model,
                                                         const GridSpec& grid,
                                                         long long max_periods, double tol) {
  ScalarField v = ScalarField::zeros(grid, Parity::odd);
  EffectiveEstimate est;
  for (long long period = 1; period <= max_periods; ++period) {
    ScalarField next = forward_period_map(v, c, model);
    auto [lo, hi] = drop_range(next, v, +1);  // rise phi~(v) - v brackets H~
    est.H_bar = 0.5 * (lo + hi);
    est.bracket_lo = lo;
    est.bracket_hi = hi;
    est.periods = period;
    if (hi - lo <= tol) {
      est.converged = true;
      return est;
    }
    v = std::move(next);
    anchor(v);
  }
  return est;
}

PeriodicSolution find_periodic_solution(std::span<const double> c, const HamiltonianModel& model,
                                        const GridSpec& grid, double tol, long long max_iters,
                                        const ScalarField* v0) {
  PeriodicSolution sol;
  sol.grid = grid;
  sol.c.assign(c.begin(), c.end());
  ScalarField v = v0 ? *v0 : ScalarField::zeros(grid, Parity::odd);
  anchor(v);
  double H_bar = 0.0, bracket = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  long long it = 0;
  for (; it < max_iters; ++it) {
    ScalarField next = time_one_map(v, c, model);
    auto [lo, hi] = drop_range(v, next, +1);
    H_bar = 0.5 * (lo + hi);
    bracket = hi - lo;
    residual = 0.0;
    for (std::size_t idx : grid.sites(v.parity))
      residual = std::max(residual, std::abs(next.values[idx] + H_bar - v.values[idx]));
    if (residual <= tol) {
      ++it;
      break;
    }
    // Picard sweep: v <- phi(v) + H_bar, re-anchored
    for (std::size_t idx : grid.sites(v.parity)) next.values[idx] += H_bar;
    v = std::move(next);
    anchor(v);
  }
  sol.H_bar = H_bar;
  sol.bracket_width = bracket;
  sol.residual = residual;
  sol.iterations = it;
  sol.converged = residual <= tol;

  // materialize one full period of levels v^0 .. v^{2K-1}
  IvpSolution ivp = solve_ivp(v, 2 * grid.K - 1, c, model, nullptr,
                              SolveOptions{.check_cfl = true, .record_monitors = false});
  sol.levels = std::move(ivp.levels);

  if (model.autonomous && sol.levels.size() >= 3) {
    double gap = 0.0;
    for (std::size_t idx : grid.sites(v.parity))
      gap = std::max(gap, std::abs(sol.levels[2].values[idx] + 2.0 * grid.tau * H_bar -
                                   sol.levels[0].values[idx]));
    sol.stationarity_gap = gap;
  }
  return sol;
}

double effective_identity_sum(const PeriodicSolution& sol, const HamiltonianModel& model) {
  const GridSpec& g = sol.grid;
  // average of H(x_m, t_k, c + (D_x v)^k_m) over even space-time nodes; the
  // per-node weight 2 h^d tau equals (2h)^d tau for d = 1
  double weight = 2.0 * std::pow(g.h, g.d) * g.tau;
  NeighborTable nt = NeighborTable::build(g);
  double inv2h = 1.0 / (2.0 * g.h);
  std::vector<int> m(g.d);
  std::vector<double> x(g.d), p(g.d);
  double total = 0.0;
  for (long long k = 0; k < 2 * g.K; ++k) {
    const ScalarField& v = sol.levels[static_cast<std::size_t>(k)];
    double t_k = g.time(k);
    for (std::size_t idx : g.sites(opposite(v.parity))) {
      for (int a = 0; a < g.d; ++a)
        p[a] = sol.c[a] + (v.values[nt.plus(idx, a)] - v.values[nt.minus(idx, a)]) * inv2h;
      g.coords_of(idx, m);
      for (int a = 0; a < g.d; ++a) x[a] = g.xcoord(m[a]);
      total += model.H(x, t_k, p) * weight;
    }
  }
  return total;
}

EffectiveSurface effective_surface(const HamiltonianModel& model, const GridSpec& grid,
                                   const std::vector<std::vector<double>>& axes, double tol,
                                   bool with_forward) {
  if (static_cast<int>(axes.size()) != model.d)
    throw std::invalid_argument("effective_surface: axes/dimension mismatch");
  EffectiveSurface s;
  s.d = model.d;
  s.axes = axes;
  std::size_t total = 1;
  for (const auto& ax : axes) {
    if (ax.empty()) throw std::invalid_argument("effective_surface: empty axis");
    total *= ax.size();
  }
  s.H.resize(total);
  s.bracket.resize(total);
  s.residual.resize(total);
  if (with_forward) s.H_forward.resize(total);
  std::vector<int> idx(model.d, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> c = s.c_at(idx);
    PeriodicSolution sol = find_periodic_solution(c, model, grid, tol);
    s.H[flat] = sol.H_bar;
    s.bracket[flat] = sol.bracket_width;
    s.residual[flat] = sol.residual;
    if (with_forward)
      s.H_forward[flat] =
          estimate_effective_hamiltonian_forward(c, model, grid, 20000, tol).H_bar;
    for (int a = model.d - 1; a >= 0; --a) {
      if (++idx[a] < static_cast<int>(axes[a].size())) break;
      idx[a] = 0;
    }
  }
  return s;
}

ConvexityReport check_midpoint_convexity(const EffectiveSurface& s, double tol) {
  ConvexityReport rep;
  // axis-aligned triples (i-1, i, i+1) in every axis, all cross positions
  std::vector<int> idx(s.d, 0);
  std::size_t total = s.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int a = 0; a < s.d; ++a) {
      int n = static_cast<int>(s.axes[a].size());
      if (idx[a] >= 1 && idx[a] + 1 < n) {
        std::vector<int> j = idx;
        j[a] = idx[a] - 1;
        double lo = s.H[s.flat_index(j)];
        j[a] = idx[a] + 1;
        double hi = s.H[s.flat_index(j)];
        double viol = 2.0 * s.H[flat] - lo - hi;
        rep.worst_violation = std::max(rep.worst_violation, viol);
        if (viol > tol) rep.pass = false;
      }
    }
    for (int a = s.d - 1; a >= 0; --a) {
      if (++idx[a] < static_cast<int>(s.axes[a].size())) break;
      idx[a] = 0;
    }
  }
  return rep;
}

LongTimeReport long_time_convergence(const ScalarField& v0, std::span<const double> c,
                                     const HamiltonianModel& model, long long max_steps,
                                     double settle_tol) {
  if (!model.autonomous)
    throw std::invalid_argument("long_time_convergence: autonomous models only");
  const GridSpec& g = v0.grid;
  LongTimeReport rep;
  EffectiveEstimate est = estimate_effective_hamiltonian(c, model, nullptr, 40000, 1e-12, &g);
  rep.H_bar = est.H_bar;

  // trajectory with drift removed: w^k = v^k + H_bar * t_k; since the scheme
  // commutes with constants, w^{k+1} = phi(w^k) + H_bar * tau
  std::vector<ScalarField> window;  // last three levels
  window.push_back(v0);
  std::vector<ScalarField> even_snaps, odd_snaps;
  even_snaps.push_back(v0);
  long long k = 0;
  for (; k < max_steps; ++k) {
    ScalarField next = step_backward_scheme(window.back(), g.time(k), c, model);
    for (std::size_t idx : g.sites(next.parity)) next.values[idx] += rep.H_bar * g.tau;
    window.push_back(next);
    if (window.size() > 3) window.erase(window.begin());
    if (window.size() == 3) {
      double S = -std::numeric_limits<double>::infinity();
      for (std::size_t idx : g.sites(window[0].parity))
        S = std::max(S, window[2].values[idx] - window[0].values[idx]);
      if (!rep.S.empty() && S > rep.S.back() + 1e-13) rep.monotone = false;
      rep.S.push_back(S);
    }
    if ((k + 1) % 2 == 0)
      even_snaps.push_back(window.back());
    else
      odd_snaps.push_back(window.back());
    // settled?
    if (window.size() == 3) {
      double diff = 0.0;
      for (std::size_t idx : g.sites(window[0].parity))
        diff = std::max(diff, std::abs(window[2].values[idx] - window[0].values[idx]));
      if (diff < settle_tol && k > 4) break;
    }
  }
  rep.steps = k + 1;
  rep.limit_even = (k + 1) % 2 == 0 ? window.back() : window[window.size() - 2];
  rep.limit_odd = (k + 1) % 2 == 0 ? window[window.size() - 2] : window.back();
  auto dist = [&g](const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t idx : g.sites(a.parity))
      m = std::max(m, std::abs(a.values[idx] - b.values[idx]));
    return m;
  };
  for (const auto& s : even_snaps) rep.even_distances.push_back(dist(s, rep.limit_even));
  rep.final_even_distance = rep.even_distances.empty() ? 0.0 : rep.even_distances.back();
  if (!odd_snaps.empty()) rep.final_odd_distance = dist(odd_snaps.back(), rep.limit_odd);
  return rep;
}

ScalingReport scaling_study(const HamiltonianModel& model, std::span<const double> c,
                            const std::vector<std::pair<int, int>>& grids, double tol) {
  ScalingReport rep;
  bool have_oracle = model.d == 1;
  double oracle_H = 0.0;
  if (have_oracle) {
    try {
      oracle_H = cell_problem_1d(model, c[0]).H_bar;
    } catch (const std::exception&) {
      have_oracle = false;
    }
  }
  rep.oracle_based = have_oracle;
  std::vector<ScalarField> prev_v0;
  double prev_H = 0.0;
  for (std::size_t i = 0; i < grids.size(); ++i) {
    GridSpec g = GridSpec::create(model.d, grids[i].first, grids[i].second);
    PeriodicSolution sol = find_periodic_solution(c, model, g, tol);
    ScalingRow row;
    row.N = g.N;
    row.K = g.K;
    row.h = g.h;
    row.H_delta = sol.H_bar;
    row.bracket = sol.bracket_width;
    row.error = have_oracle ? std::abs(sol.H_bar - oracle_H)
                            : (i == 0 ? 0.0 : std::abs(sol.H_bar - prev_H));
    if (!prev_v0.empty()) {
      Interpolant wa = lipschitz_interpolate(prev_v0.front());
      Interpolant wb = lipschitz_interpolate(sol.levels.front());
      double gap = 0.0;
      int n = 256;
      std::vector<double> x(model.d, 0.0);
      if (model.d == 1) {
        // compare anchored representatives: remove the mean offset first
        double off = 0.0;
        for (int j = 0; j < n; ++j) {
          x[0] = (j + 0.5) / n;
          off += (wb(x) - wa(x)) / n;
        }
        for (int j = 0; j < n; ++j) {
          x[0] = (j + 0.5) / n;
          gap = std::max(gap, std::abs(wb(x) - wa(x) - off));
        }
      }
      row.interp_gap = gap;
    }
    prev_v0.clear();
    prev_v0.push_back(sol.levels.front());
    prev_H = sol.H_bar;
    rep.rows.push_back(row);
  }
  // least-squares slope of log error vs log h over rows with positive error
  std::vector<double> xs, ys;
  for (const auto& row : rep.rows)
    if (row.error > 0) {
      xs.push_back(std::log(row.h));
      ys.push_back(std::log(row.error));
    }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      num += (xs[i] - mx) * (ys[i] - my);
      den += (xs[i] - mx) * (xs[i] - mx);
    }
    rep.fitted_slope = den > 0 ? num / den : 0.0;
  }
  return rep;
}

DerivativeProbeReport derivative_convergence_probe(const std::vector<PeriodicSolution>& sols,
                                                   const HamiltonianModel& model) {
  DerivativeProbeReport rep;
  if (model.d != 1)
    throw std::invalid_argument("derivative_convergence_probe: 1-D models only");
  for (const auto& sol : sols) {
    CellProblem1D cp = cell_problem_1d(model, sol.c[0]);
    const GridSpec& g = sol.grid;
    VectorField dx = discrete_dx(sol.levels.front());
    double max_err = 0.0, sum_err = 0.0;
    std::size_t count = 0;
    std::vector<int> m(1);
    for (std::size_t idx : g.sites(dx.parity)) {
      g.coords_of(idx, m);
      double x = g.xcoord(m[0]);
      if (!std::isnan(cp.shock_x)) {
        // skip a neighborhood of the shock where the oracle slope jumps
        double dsh = std::abs(x - cp.shock_x);
        dsh = std::min(dsh, 1.0 - dsh);
        if (dsh < 3.0 * g.h) continue;
      }
      double err = std::abs(dx.at_index(idx)[0] - cp.slope(x));
      max_err = std::max(max_err, err);
      sum_err += err;
      ++count;
    }
    rep.rows.push_back({g.h, max_err, count ? sum_err / count : 0.0});
  }
  return rep;
}

}  // namespace wkam
