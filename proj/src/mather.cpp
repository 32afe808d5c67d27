#include "wkam/mather.hpp"

#include <cmath>
#include <limits>

namespace wkam {

namespace {

long long wrap_level(long long k, long long period) {
  long long r = k % period;
  return r < 0 ? r + period : r;
}

OccupationMeasure occupation_from_walker(WrappedWalker walker, const ControlPolicy& xi,
                                         long long l, MeasureMode mode,
                                         double support_threshold) {
  const GridSpec g = walker.grid();
  if (l <= 0) throw std::invalid_argument("occupation_measure: horizon must be positive");
  long long period = 2 * g.K;
  std::size_t n = g.num_sites();
  std::size_t slots = mode == MeasureMode::spacetime ? static_cast<std::size_t>(period) : 1;
  std::vector<std::vector<double>> acc(slots, std::vector<double>(n, 0.0));
  constexpr double unset = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> ctrl(slots, std::vector<double>(n * g.d, unset));

  for (long long j = 0; j < l; ++j) {
    long long k = -j;  // current walk level
    std::size_t slot =
        mode == MeasureMode::spacetime ? static_cast<std::size_t>(wrap_level(k, period)) : 0;
    const VectorField& field = xi.at_level(k);
    const std::vector<double>& p = walker.masses();
    for (std::size_t idx = 0; idx < n; ++idx) {
      if (p[idx] == 0.0) continue;
      acc[slot][idx] += p[idx];
      const double* z = field.values.data() + idx * g.d;
      double* slotc = ctrl[slot].data() + idx * g.d;
      if (std::isnan(slotc[0])) {
        for (int a = 0; a < g.d; ++a) slotc[a] = z[a];
      } else {
        for (int a = 0; a < g.d; ++a)
          if (std::abs(slotc[a] - z[a]) > 1e-9)
            throw std::invalid_argument(
                "occupation_measure: control policy is not 1-periodic on the support");
      }
    }
    walker.step(xi, WalkDirection::backward);
  }

  OccupationMeasure mu;
  mu.grid = g;
  mu.mode = mode;
  mu.horizon = l;
  mu.support_threshold = support_threshold;
  double inv_l = 1.0 / static_cast<double>(l);
  for (std::size_t slot = 0; slot < slots; ++slot)
    for (std::size_t idx = 0; idx < n; ++idx) {
      double mass = acc[slot][idx] * inv_l;
      if (mass == 0.0) continue;
      mu.total_mass += mass;
      if (mass <= support_threshold) continue;
      SupportNode node;
      node.level = static_cast<long long>(slot);
      node.site = idx;
      node.mass = mass;
      node.control.assign(ctrl[slot].begin() + static_cast<long long>(idx) * g.d,
                          ctrl[slot].begin() + static_cast<long long>(idx + 1) * g.d);
      mu.nodes.push_back(std::move(node));
    }
  return mu;
}

std::vector<int> first_odd_site(const GridSpec& g) {
  std::vector<int> m(g.d, 0);
  m[0] = 1;
  return m;
}

}  // namespace

OccupationMeasure occupation_measure(const ControlPolicy& xi, std::span<const int> start,
                                     long long l, MeasureMode mode, double support_threshold) {
  return occupation_from_walker(WrappedWalker(xi.grid, start, 0), xi, l, mode,
                                support_threshold);
}

OccupationMeasure occupation_measure(const ControlPolicy& xi,
                                     const std::vector<double>& start_masses, long long l,
                                     MeasureMode mode, double support_threshold) {
  return occupation_from_walker(WrappedWalker(xi.grid, start_masses, 0), xi, l, mode,
                                support_threshold);
}

double holonomic_check(const OccupationMeasure& mu, const std::vector<ScalarField>& g_levels) {
  const GridSpec& g = mu.grid;
  long long period = static_cast<long long>(g_levels.size());
  if (period <= 0 || period % 2 != 0)
    throw std::invalid_argument("holonomic_check: need an even number of test-field levels");
  for (long long j = 0; j < period; ++j)
    if (g_levels[static_cast<std::size_t>(j)].parity != g.level_parity(j))
      throw std::invalid_argument("holonomic_check: test-field parity does not match its level");
  if (mu.mode == MeasureMode::autonomous && period != 2)
    throw std::invalid_argument("holonomic_check: autonomous measures take a 2-level test field");

  std::vector<ScalarField> dt;
  std::vector<VectorField> dxp;
  dt.reserve(static_cast<std::size_t>(period));
  dxp.reserve(static_cast<std::size_t>(period));
  for (long long j = 0; j < period; ++j) {
    const ScalarField& prev = g_levels[static_cast<std::size_t>(wrap_level(j - 1, period))];
    dt.push_back(discrete_dt(g_levels[static_cast<std::size_t>(j)], prev));
    dxp.push_back(discrete_dx(prev));
  }

  double sum = 0.0;
  for (const SupportNode& node : mu.nodes) {
    long long j;
    if (mu.mode == MeasureMode::spacetime)
      j = wrap_level(node.level, period);
    else
      j = g.site_parity(node.site) == g.level_parity(0) ? 0 : 1;
    std::size_t sj = static_cast<std::size_t>(j);
    double f = dt[sj].values[node.site];
    std::span<const double> dx = dxp[sj].at_index(node.site);
    for (int a = 0; a < g.d; ++a) f += dx[a] * node.control[static_cast<std::size_t>(a)];
    sum += node.mass * f;
  }
  return std::abs(sum);
}

ControlPolicy minimizing_periodic_policy(const PeriodicSolution& sol,
                                         const HamiltonianModel& model) {
  const GridSpec& g = sol.grid;
  long long period = 2 * g.K;
  if (static_cast<long long>(sol.levels.size()) != period)
    throw std::invalid_argument("minimizing_periodic_policy: solution misses levels");
  NeighborTable nt = NeighborTable::build(g);
  double inv2h = 1.0 / (2.0 * g.h);
  ControlPolicy pol;
  pol.grid = g;
  pol.level0 = 0;
  pol.periodic = true;
  std::vector<int> m(g.d);
  std::vector<double> x(g.d), p(g.d);
  for (long long k = 0; k < period; ++k) {
    long long src = wrap_level(k - 1, period);
    const ScalarField& v = sol.levels[static_cast<std::size_t>(src)];
    double t_src = g.time(src);
    VectorField field = VectorField::zeros(g, g.level_parity(k));
    for (std::size_t idx : g.sites(field.parity)) {
      for (int a = 0; a < g.d; ++a)
        p[static_cast<std::size_t>(a)] =
            sol.c[static_cast<std::size_t>(a)] +
            (v.values[nt.plus(idx, a)] - v.values[nt.minus(idx, a)]) * inv2h;
      g.coords_of(idx, m);
      for (int a = 0; a < g.d; ++a) x[static_cast<std::size_t>(a)] = g.xcoord(m[a]);
      model.Hp(x, t_src, p, field.at_index(idx));
    }
    pol.levels.push_back(std::move(field));
  }
  return pol;
}

std::vector<double> stationary_distribution(const ControlPolicy& xi, const GridSpec& g,
                                            double tv_tol, long long max_periods) {
  std::vector<double> p(g.num_sites(), 0.0);
  std::vector<std::size_t> odd = g.sites(g.level_parity(0));
  for (std::size_t idx : odd) p[idx] = 1.0 / static_cast<double>(odd.size());
  WrappedWalker walker(g, p, 0);
  long long period = 2 * g.K;
  for (long long it = 0; it < max_periods; ++it) {
    std::vector<double> before = walker.masses();
    for (long long j = 0; j < period; ++j) walker.step(xi, WalkDirection::backward);
    double tv = 0.0;
    const std::vector<double>& after = walker.masses();
    for (std::size_t idx = 0; idx < after.size(); ++idx)
      tv += std::abs(after[idx] - before[idx]);
    if (0.5 * tv <= tv_tol) break;
  }
  std::vector<double> out = walker.masses();
  // renormalize against round-off drift
  double total = walker.total_mass();
  for (double& v : out) v /= total;
  return out;
}

MatherApproximation mather_measure(const PeriodicSolution& sol, const HamiltonianModel& model,
                                   const std::vector<long long>& horizons, double tol,
                                   bool stationary_start, double support_threshold) {
  if (horizons.empty()) throw std::invalid_argument("mather_measure: empty horizon schedule");
  const GridSpec& g = sol.grid;
  long long period = 2 * g.K;
  ControlPolicy pol = minimizing_periodic_policy(sol, model);

  std::vector<double> start;
  if (stationary_start) {
    start = stationary_distribution(pol, g);
  } else {
    start.assign(g.num_sites(), 0.0);
    start[g.index_of(first_odd_site(g))] = 1.0;
  }

  MatherApproximation out;
  out.c = sol.c;
  out.H_bar = sol.H_bar;

  auto level_spread = [&](long long l) {
    const ScalarField& v = sol.levels[static_cast<std::size_t>(wrap_level(-l, period))];
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t idx : g.sites(v.parity)) {
      lo = std::min(lo, v.values[idx]);
      hi = std::max(hi, v.values[idx]);
    }
    return hi - lo;
  };

  WrappedWalker walker(g, start, 0);
  std::vector<int> m(g.d);
  std::vector<double> x(g.d);
  double action_sum = 0.0;  // sum over steps of E[L^{(c)}] at the visited level
  long long done = 0;
  long long final_horizon = horizons.back();
  for (long long target : horizons) {
    if (target <= done) throw std::invalid_argument("mather_measure: schedule must increase");
    for (; done < target; ++done) {
      long long k = -done;
      const VectorField& field = pol.at_level(k);
      double t_prev = g.time(k - 1);
      const std::vector<double>& p = walker.masses();
      double lvl = 0.0;
      for (std::size_t idx = 0; idx < p.size(); ++idx) {
        if (p[idx] == 0.0) continue;
        g.coords_of(idx, m);
        for (int a = 0; a < g.d; ++a) x[static_cast<std::size_t>(a)] = g.xcoord(m[a]);
        std::span<const double> z = field.at_index(idx);
        double dot = 0.0;
        for (int a = 0; a < g.d; ++a)
          dot += sol.c[static_cast<std::size_t>(a)] * z[a];
        lvl += p[idx] * (model.L(x, t_prev, z) - dot);
      }
      action_sum += lvl;
      walker.step(pol, WalkDirection::backward);
    }
    double action = action_sum / static_cast<double>(target);
    double defect = action + sol.H_bar;
    out.horizons.push_back(target);
    out.defects.push_back(defect);
    out.defect_bounds.push_back(level_spread(target) / (g.tau * static_cast<double>(target)));
    out.action = action;
    out.defect = defect;
    if (std::abs(defect) <= tol) {
      out.converged = true;
      final_horizon = target;
      break;
    }
  }
  out.defect_bound = out.defect_bounds.back();
  out.measure =
      occupation_measure(pol, start, final_horizon, MeasureMode::spacetime, support_threshold);
  return out;
}

std::vector<double> rotation_vector(const PeriodicSolution& sol, const HamiltonianModel& model,
                                    long long horizon, bool stationary_start) {
  if (horizon <= 0) throw std::invalid_argument("rotation_vector: horizon must be positive");
  const GridSpec& g = sol.grid;
  ControlPolicy pol = minimizing_periodic_policy(sol, model);
  std::vector<double> start;
  if (stationary_start) {
    start = stationary_distribution(pol, g);
  } else {
    start.assign(g.num_sites(), 0.0);
    start[g.index_of(first_odd_site(g))] = 1.0;
  }
  WrappedWalker walker(g, start, 0);
  std::vector<double> sum(g.d, 0.0);
  for (long long j = 0; j < horizon; ++j) {
    std::vector<double> mc = walker.mean_control(pol);
    for (int a = 0; a < g.d; ++a) sum[static_cast<std::size_t>(a)] += mc[static_cast<std::size_t>(a)];
    walker.step(pol, WalkDirection::backward);
  }
  for (double& v : sum) v /= static_cast<double>(horizon);
  return sum;
}

bool AubrySet::contains(long long level, std::size_t site) const {
  long long period = static_cast<long long>(member.size());
  return member[static_cast<std::size_t>(wrap_level(level, period))][site] != 0;
}

std::span<const double> AubrySet::control_at(long long level, std::size_t site) const {
  long long period = static_cast<long long>(controls.size());
  return controls[static_cast<std::size_t>(wrap_level(level, period))].at_index(site);
}

AubrySet aubry_set(const std::vector<PeriodicSolution>& sols, const HamiltonianModel& model,
                   double control_tol) {
  if (sols.empty()) throw std::invalid_argument("aubry_set: need at least one solution");
  const GridSpec& g = sols.front().grid;
  long long period = 2 * g.K;
  std::vector<ControlPolicy> pols;
  pols.reserve(sols.size());
  for (const auto& s : sols) pols.push_back(minimizing_periodic_policy(s, model));

  AubrySet A;
  A.grid = g;
  A.control_tol = control_tol;
  A.controls = pols.front().levels;
  A.member.assign(static_cast<std::size_t>(period),
                  std::vector<char>(g.num_sites(), 0));
  for (long long k = 0; k < period; ++k) {
    std::size_t sk = static_cast<std::size_t>(k);
    for (std::size_t idx : g.sites(g.level_parity(k))) {
      bool ok = true;
      std::span<const double> base = pols.front().levels[sk].at_index(idx);
      for (std::size_t s = 1; s < pols.size() && ok; ++s) {
        std::span<const double> other = pols[s].levels[sk].at_index(idx);
        for (int a = 0; a < g.d; ++a)
          if (std::abs(base[static_cast<std::size_t>(a)] -
                       other[static_cast<std::size_t>(a)]) > control_tol) {
            ok = false;
            break;
          }
      }
      A.member[sk][idx] = ok ? 1 : 0;
    }
  }
  return A;
}

ContainmentReport mather_support_in_aubry(const OccupationMeasure& mu, const AubrySet& aubry) {
  if (mu.mode != MeasureMode::spacetime)
    throw std::invalid_argument("mather_support_in_aubry: spacetime measures only");
  ContainmentReport rep;
  for (const SupportNode& node : mu.nodes) {
    ++rep.checked;
    if (!aubry.contains(node.level, node.site)) {
      rep.pass = false;
      rep.worst_mismatch = std::numeric_limits<double>::infinity();
      continue;
    }
    std::span<const double> ref = aubry.control_at(node.level, node.site);
    for (std::size_t a = 0; a < node.control.size(); ++a) {
      double diff = std::abs(node.control[a] - ref[a]);
      rep.worst_mismatch = std::max(rep.worst_mismatch, diff);
      if (diff > aubry.control_tol) rep.pass = false;
    }
  }
  return rep;
}

UniquenessReport uniqueness_on_mather_set(const PeriodicSolution& a, const PeriodicSolution& b,
                                          const OccupationMeasure& support, double tol,
                                          double factor) {
  const GridSpec& g = a.grid;
  if (a.levels.size() != b.levels.size())
    throw std::invalid_argument("uniqueness_on_mather_set: level count mismatch");
  std::vector<int> anchor = first_odd_site(g);
  double offset = a.levels.front().at(anchor) - b.levels.front().at(anchor);

  auto gap_at = [&](long long level, std::size_t site) {
    const ScalarField& va = a.levels[static_cast<std::size_t>(level)];
    const ScalarField& vb = b.levels[static_cast<std::size_t>(level)];
    return std::abs(va.values[site] - vb.values[site] - offset);
  };

  UniquenessReport rep;
  for (const SupportNode& node : support.nodes)
    rep.gap_on_support =
        std::max(rep.gap_on_support,
                 gap_at(wrap_level(node.level, static_cast<long long>(a.levels.size())),
                        node.site));
  for (std::size_t k = 0; k < a.levels.size(); ++k)
    for (std::size_t idx : g.sites(a.levels[k].parity))
      rep.gap_global = std::max(rep.gap_global, gap_at(static_cast<long long>(k), idx));
  rep.agree_on_support = rep.gap_on_support <= tol;
  rep.pass = !rep.agree_on_support || rep.gap_global <= factor * tol;
  return rep;
}

}  // namespace wkam
