#include "wkam/walk.hpp"

#include <bit>
#include <cmath>
#include <random>

namespace wkam {

namespace {

void check_box(std::span<const double> xi, const GridSpec& g) {
  double cap = 1.0 / (g.d * g.lambda) + 1e-12;
  for (double v : xi)
    if (std::abs(v) > cap)
      throw InvalidControl("control component outside [-(d*lambda)^-1, (d*lambda)^-1]");
}

std::size_t wrap_site(const GridSpec& g, std::span<const int> coords) {
  return g.index_of(coords);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

const VectorField& ControlPolicy::at_level(long long k) const {
  long long j = k - level0;
  long long n = static_cast<long long>(levels.size());
  if (n == 0) throw std::invalid_argument("ControlPolicy: empty");
  if (periodic) {
    j %= n;
    if (j < 0) j += n;
  } else if (j < 0 || j >= n) {
    throw std::invalid_argument("ControlPolicy: level " + std::to_string(k) + " outside window");
  }
  return levels[static_cast<std::size_t>(j)];
}

ControlPolicy ControlPolicy::constant(const GridSpec& g, std::span<const double> value) {
  ControlPolicy pol;
  pol.grid = g;
  pol.periodic = true;
  for (int lvl = 0; lvl < 2; ++lvl) {
    VectorField f = VectorField::zeros(g, lvl == 0 ? Parity::odd : Parity::even);
    for (std::size_t idx = 0; idx < g.num_sites(); ++idx)
      for (int a = 0; a < g.d; ++a) f.values[idx * g.d + a] = value[a];
    pol.levels.push_back(std::move(f));
  }
  return pol;
}

std::vector<double> transition_probs(std::span<const double> xi_node, WalkDirection dir,
                                     const GridSpec& g) {
  check_box(xi_node, g);
  double sign = dir == WalkDirection::backward ? -1.0 : 1.0;
  std::vector<double> probs(2 * g.d);
  double base = 1.0 / (2.0 * g.d);
  for (int a = 0; a < g.d; ++a) {
    probs[2 * a] = base + sign * 0.5 * g.lambda * xi_node[a];
    probs[2 * a + 1] = base - sign * 0.5 * g.lambda * xi_node[a];
  }
  return probs;
}

double NodeDistribution::total_mass() const {
  double s = 0.0;
  for (const auto& [k, v] : masses) s += v;
  return s;
}

std::vector<NodeDistribution> propagate_distribution(const GridSpec& g, std::span<const int> start,
                                                     long long k0, const ControlPolicy& xi,
                                                     long long steps, WalkDirection dir) {
  std::vector<NodeDistribution> out;
  NodeDistribution cur;
  cur.grid = g;
  cur.level = k0;
  cur.masses[std::vector<int>(start.begin(), start.end())] = 1.0;
  out.push_back(cur);
  long long dk = dir == WalkDirection::backward ? -1 : 1;
  for (long long s = 0; s < steps; ++s) {
    NodeDistribution next;
    next.grid = g;
    next.level = cur.level + dk;
    for (const auto& [coords, mass] : cur.masses) {
      std::size_t site = wrap_site(g, coords);
      auto probs = transition_probs(xi.xi(cur.level, site), dir, g);
      std::vector<int> c2 = coords;
      for (int a = 0; a < g.d; ++a) {
        c2[a] = coords[a] + 1;
        next.masses[c2] += mass * probs[2 * a];
        c2[a] = coords[a] - 1;
        next.masses[c2] += mass * probs[2 * a + 1];
        c2[a] = coords[a];
      }
    }
    out.push_back(next);
    cur = std::move(next);
  }
  return out;
}

std::vector<PathSample> sample_paths(const GridSpec& g, std::span<const int> start, long long k0,
                                     const ControlPolicy& xi, long long steps,
                                     std::size_t n_paths, std::uint64_t seed, WalkDirection dir) {
  std::vector<PathSample> out;
  out.reserve(n_paths);
  long long dk = dir == WalkDirection::backward ? -1 : 1;
  for (std::size_t i = 0; i < n_paths; ++i) {
    PathSample ps;
    ps.start.assign(start.begin(), start.end());
    ps.stream = splitmix64(seed ^ splitmix64(i + 1));
    std::mt19937_64 rng(ps.stream);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<int> coords = ps.start;
    std::vector<double> eta(g.d);
    for (int a = 0; a < g.d; ++a) eta[a] = g.xcoord(coords[a]);
    ps.gamma.push_back(coords);
    ps.eta.push_back(eta);
    long long level = k0;
    for (long long s = 0; s < steps; ++s) {
      std::size_t site = wrap_site(g, coords);
      auto xin = xi.xi(level, site);
      auto probs = transition_probs(xin, dir, g);
      double u = unif(rng);
      int pick = 2 * g.d - 1;
      double acc = 0.0;
      for (int j = 0; j < 2 * g.d; ++j) {
        acc += probs[j];
        if (u < acc) {
          pick = j;
          break;
        }
      }
      int axis = pick / 2;
      int step = pick % 2 == 0 ? 1 : -1;
      coords[axis] += step;
      for (int a = 0; a < g.d; ++a) eta[a] += dk * xin[a] * g.tau;
      level += dk;
      ps.gamma.push_back(coords);
      ps.eta.push_back(eta);
    }
    out.push_back(std::move(ps));
  }
  return out;
}

std::vector<std::vector<double>> averaged_path(const GridSpec& g, std::span<const int> start,
                                               long long k0, const ControlPolicy& xi,
                                               long long steps, WalkDirection dir) {
  std::vector<std::vector<double>> out;
  std::vector<double> pos(g.d);
  for (int a = 0; a < g.d; ++a) pos[a] = g.xcoord(start[a]);
  out.push_back(pos);
  WrappedWalker w(g, start, k0);
  double sign = dir == WalkDirection::backward ? -1.0 : 1.0;
  for (long long s = 0; s < steps; ++s) {
    std::vector<double> xbar = w.mean_control(xi);
    for (int a = 0; a < g.d; ++a) pos[a] += sign * xbar[a] * g.tau;
    w.step(xi, dir);
    out.push_back(pos);
  }
  return out;
}

double action_functional(const ScalarField& v0, const ControlPolicy& xi,
                         std::span<const int> start, long long l, std::span<const double> c,
                         const HamiltonianModel& model) {
  const GridSpec& g = v0.grid;
  WrappedWalker w(g, start, l + 1);
  double E = 0.0;
  std::vector<int> m(g.d);
  std::vector<double> x(g.d), zc(g.d);
  for (long long k = l + 1; k >= 1; --k) {
    double t = g.time(k - 1);
    const std::vector<double>& p = w.masses();
    for (std::size_t idx = 0; idx < g.num_sites(); ++idx) {
      if (p[idx] == 0.0) continue;
      auto z = xi.xi(k, idx);
      g.coords_of(idx, m);
      for (int a = 0; a < g.d; ++a) x[a] = g.xcoord(m[a]);
      double lc = model.L(x, t, z);
      for (int a = 0; a < g.d; ++a) lc -= c[a] * z[a];
      E += p[idx] * g.tau * lc;
    }
    w.step(xi, WalkDirection::backward);
  }
  const std::vector<double>& p0 = w.masses();
  for (std::size_t idx = 0; idx < g.num_sites(); ++idx)
    if (p0[idx] != 0.0) E += p0[idx] * v0.values[idx];
  return E;
}

MonteCarloEstimate action_functional_mc(const ScalarField& v0, const ControlPolicy& xi,
                                        std::span<const int> start, long long l,
                                        std::span<const double> c, const HamiltonianModel& model,
                                        std::size_t n_paths, std::uint64_t seed) {
  const GridSpec& g = v0.grid;
  auto paths = sample_paths(g, start, l + 1, xi, l + 1, n_paths, seed, WalkDirection::backward);
  double sum = 0.0, sumsq = 0.0;
  std::vector<double> x(g.d);
  for (const auto& ps : paths) {
    double cost = 0.0;
    for (long long j = 0; j <= l; ++j) {
      long long k = l + 1 - j;  // level of gamma[j]
      const auto& coords = ps.gamma[static_cast<std::size_t>(j)];
      std::size_t site = wrap_site(g, coords);
      auto z = xi.xi(k, site);
      for (int a = 0; a < g.d; ++a) x[a] = g.xcoord(coords[a]);
      double lc = model.L(x, g.time(k - 1), z);
      for (int a = 0; a < g.d; ++a) lc -= c[a] * z[a];
      cost += g.tau * lc;
    }
    std::size_t site0 = wrap_site(g, ps.gamma.back());
    cost += v0.values[site0];
    sum += cost;
    sumsq += cost * cost;
  }
  MonteCarloEstimate est;
  est.n_paths = n_paths;
  if (n_paths > 0) {
    est.estimate = sum / n_paths;
    if (n_paths > 1) {
      double var = (sumsq - sum * sum / n_paths) / (n_paths - 1);
      est.std_error = std::sqrt(std::max(0.0, var) / n_paths);
    }
  }
  return est;
}

std::vector<VarianceLevel> variance_diagnostic(const GridSpec& g, std::span<const int> start,
                                               long long k0, const ControlPolicy& xi,
                                               long long steps) {
  // Joint sparse law of (gamma, eta - gamma); the gap takes finitely many
  // values per level so the propagation is exact.
  using Key = std::vector<std::int64_t>;  // coords then bit-cast gap components
  std::map<Key, double> cur;
  Key k(start.size() * 2);
  for (std::size_t i = 0; i < start.size(); ++i) {
    k[i] = start[i];
    k[start.size() + i] = std::bit_cast<std::int64_t>(0.0);
  }
  cur[k] = 1.0;

  std::vector<VarianceLevel> out;
  auto record = [&](long long level) {
    VarianceLevel vl;
    vl.level = level;
    vl.sigma_tilde.assign(g.d, 0.0);
    vl.sigma_hat.assign(g.d, 0.0);
    for (const auto& [key, mass] : cur)
      for (int a = 0; a < g.d; ++a) {
        double gap = std::bit_cast<double>(key[g.d + a]);
        vl.sigma_tilde[a] += mass * gap * gap;
        vl.sigma_hat[a] += mass * std::abs(gap);
      }
    vl.bound = (g.time(k0) - g.time(level)) * g.h / g.lambda;
    out.push_back(std::move(vl));
  };
  record(k0);
  long long level = k0;
  for (long long s = 0; s < steps; ++s) {
    std::map<Key, double> next;
    std::vector<int> coords(g.d);
    for (const auto& [key, mass] : cur) {
      for (int a = 0; a < g.d; ++a) coords[a] = static_cast<int>(key[a]);
      std::size_t site = wrap_site(g, coords);
      auto xin = xi.xi(level, site);
      auto probs = transition_probs(xin, WalkDirection::backward, g);
      for (int a = 0; a < g.d; ++a)
        for (int sgn = 0; sgn < 2; ++sgn) {
          Key nk = key;
          nk[a] = key[a] + (sgn == 0 ? 1 : -1);
          for (int b = 0; b < g.d; ++b) {
            double gap = std::bit_cast<double>(key[g.d + b]);
            gap -= xin[b] * g.tau;
            if (b == a) gap -= (sgn == 0 ? 1.0 : -1.0) * g.h;
            nk[g.d + b] = std::bit_cast<std::int64_t>(gap);
          }
          next[nk] += mass * probs[2 * a + sgn];
        }
    }
    cur = std::move(next);
    --level;
    record(level);
  }
  return out;
}

WrappedWalker::WrappedWalker(const GridSpec& g, std::span<const int> start, long long k0)
    : grid_(g), nt_(NeighborTable::build(g)), level_(k0) {
  p_.assign(g.num_sites(), 0.0);
  scratch_.assign(g.num_sites(), 0.0);
  p_[g.index_of(start)] = 1.0;
}

WrappedWalker::WrappedWalker(const GridSpec& g, std::vector<double> start_masses, long long k0)
    : grid_(g), nt_(NeighborTable::build(g)), level_(k0), p_(std::move(start_masses)) {
  if (p_.size() != g.num_sites())
    throw std::invalid_argument("WrappedWalker: start distribution size mismatch");
  scratch_.assign(g.num_sites(), 0.0);
}

void WrappedWalker::step(const ControlPolicy& xi, WalkDirection dir) {
  const GridSpec& g = grid_;
  std::fill(scratch_.begin(), scratch_.end(), 0.0);
  double sign = dir == WalkDirection::backward ? -1.0 : 1.0;
  double base = 1.0 / (2.0 * g.d);
  double half_lam = 0.5 * g.lambda;
  double cap = 1.0 / (g.d * g.lambda) + 1e-12;
  const VectorField& field = xi.at_level(level_);
  for (std::size_t idx = 0; idx < p_.size(); ++idx) {
    double mass = p_[idx];
    if (mass == 0.0) continue;
    const double* z = field.values.data() + idx * g.d;
    for (int a = 0; a < g.d; ++a) {
      if (std::abs(z[a]) > cap)
        throw InvalidControl("control component outside the box during propagation");
      double pp = base + sign * half_lam * z[a];
      double pm = base - sign * half_lam * z[a];
      scratch_[nt_.plus(idx, a)] += mass * pp;
      scratch_[nt_.minus(idx, a)] += mass * pm;
    }
  }
  std::swap(p_, scratch_);
  level_ += dir == WalkDirection::backward ? -1 : 1;
}

double WrappedWalker::total_mass() const {
  double s = 0.0, comp = 0.0;
  for (double v : p_) {  // Neumaier summation: long horizons must not drift
    double t = s + v;
    if (std::abs(s) >= std::abs(v))
      comp += (s - t) + v;
    else
      comp += (v - t) + s;
    s = t;
  }
  return s + comp;
}

std::vector<double> WrappedWalker::mean_control(const ControlPolicy& xi) const {
  std::vector<double> out(grid_.d, 0.0);
  const VectorField& field = xi.at_level(level_);
  for (std::size_t idx = 0; idx < p_.size(); ++idx) {
    if (p_[idx] == 0.0) continue;
    const double* z = field.values.data() + idx * grid_.d;
    for (int a = 0; a < grid_.d; ++a) out[a] += p_[idx] * z[a];
  }
  return out;
}

}  // namespace wkam
