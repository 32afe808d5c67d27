#include "wkam/oracle.hpp"

#include <cmath>

namespace wkam {

namespace {

// Single-node one-step cost at control xi (backward walk probabilities).
double step_cost(const GridSpec& g, const ScalarField& v, std::span<const double> x,
                 std::span<const int> node, double t_k, std::span<const double> c,
                 const HamiltonianModel& model, std::span<const double> xi) {
  double lc = model.L(x, t_k, xi);
  for (int a = 0; a < g.d; ++a) lc -= c[a] * xi[a];
  double val = g.tau * lc;
  std::vector<int> m(node.begin(), node.end());
  double base = 1.0 / (2.0 * g.d);
  for (int a = 0; a < g.d; ++a) {
    int orig = m[a];
    m[a] = orig + 1;
    val += (base - 0.5 * g.lambda * xi[a]) * v.at(m);
    m[a] = orig - 1;
    val += (base + 0.5 * g.lambda * xi[a]) * v.at(m);
    m[a] = orig;
  }
  return val;
}

template <typename F>
double grid_min(int d, std::span<const double> lo, std::span<const double> hi, int n,
                F&& fn, std::vector<double>* argmin) {
  std::vector<int> idx(d, 0);
  std::vector<double> xi(d);
  double best = std::numeric_limits<double>::infinity();
  bool done = false;
  while (!done) {
    for (int a = 0; a < d; ++a)
      xi[a] = n == 1 ? 0.5 * (lo[a] + hi[a]) : lo[a] + (hi[a] - lo[a]) * idx[a] / (n - 1);
    double val = fn(std::span<const double>(xi));
    if (val < best) {
      best = val;
      if (argmin) *argmin = xi;
    }
    done = true;
    for (int a = 0; a < d; ++a) {
      if (++idx[a] < n) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
  }
  return best;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double brute_force_step_value(const ScalarField& v, std::span<const int> node, double t_k,
                              std::span<const double> c, const HamiltonianModel& model,
                              int control_samples) {
  const GridSpec& g = v.grid;
  if (control_samples == 0) control_samples = g.d == 1 ? 2001 : 201;
  if (control_samples < 2) throw std::invalid_argument("brute_force_step_value: need >= 2 samples");
  double half = 1.0 / (g.d * g.lambda);
  std::vector<double> x(g.d);
  for (int a = 0; a < g.d; ++a) x[a] = g.xcoord(node[a]);
  auto cost = [&](std::span<const double> xi) {
    return step_cost(g, v, x, node, t_k, c, model, xi);
  };
  std::vector<double> lo(g.d, -half), hi(g.d, half), best_xi;
  double coarse = grid_min(g.d, lo, hi, control_samples, cost, &best_xi);
  // One local refinement: a finer grid over +-2 coarse spacings around the best
  // sample, clipped to the box.
  double spacing = 2.0 * half / (control_samples - 1);
  for (int a = 0; a < g.d; ++a) {
    lo[a] = std::max(-half, best_xi[a] - 2.0 * spacing);
    hi[a] = std::min(half, best_xi[a] + 2.0 * spacing);
  }
  double fine = grid_min(g.d, lo, hi, 401, cost, nullptr);
  return std::min(coarse, fine);
}

double enumerate_paths_value(const ScalarField& v0, const ControlPolicy& xi,
                             std::span<const int> start, long long l, std::span<const double> c,
                             const HamiltonianModel& model) {
  if (l > 12) throw std::invalid_argument("enumerate_paths_value: l > 12 refused");
  const GridSpec& g = v0.grid;
  std::vector<double> x(g.d);
  // Depth-first over all jump sequences; prob is the product of step
  // probabilities, cost accumulates the running Lagrangian.
  double total = 0.0;
  std::vector<int> coords(start.begin(), start.end());
  std::function<void(long long, double, double)> visit = [&](long long level, double prob,
                                                             double cost) {
    if (prob == 0.0) return;
    if (level == 0) {
      total += prob * (cost + v0.values[g.index_of(coords)]);
      return;
    }
    std::size_t site = g.index_of(coords);
    auto z = xi.xi(level, site);
    auto probs = transition_probs(z, WalkDirection::backward, g);
    for (int a = 0; a < g.d; ++a) x[a] = g.xcoord(coords[a]);
    double lc = model.L(x, g.time(level - 1), z);
    for (int a = 0; a < g.d; ++a) lc -= c[a] * z[a];
    double new_cost = cost + g.tau * lc;
    for (int a = 0; a < g.d; ++a)
      for (int s = 0; s < 2; ++s) {
        coords[a] += s == 0 ? 1 : -1;
        visit(level - 1, prob * probs[2 * a + s], new_cost);
        coords[a] -= s == 0 ? 1 : -1;
      }
  };
  visit(l + 1, 1.0, 0.0);
  return total;
}

CellProblem1D cell_problem_1d(const HamiltonianModel& model, double c) {
  if (model.d != 1) throw std::invalid_argument("cell_problem_1d: 1-D models only");
  auto V = [&model](double x) {
    double p = 0.0;
    return model.H(std::span<const double>(&x, 1), 0.0, std::span<const double>(&p, 1));
  };
  // max V by dense scan plus parabolic refinement.
  int n = 8192;
  double max_V = -std::numeric_limits<double>::infinity();
  double x_max = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = static_cast<double>(i) / n;
    double v = V(x);
    if (v > max_V) {
      max_V = v;
      x_max = x;
    }
  }
  {
    double step = 1.0 / n;
    for (int it = 0; it < 60; ++it) {
      step *= 0.5;
      for (double x : {x_max - step, x_max + step}) {
        double v = V(x);
        if (v > max_V) {
          max_V = v;
          x_max = x;
        }
      }
    }
  }

  CellProblem1D out;
  out.max_V = max_V;
  double qtol = 1e-13;
  auto W_at = [V, max_V](double x) { return std::sqrt(std::max(0.0, 2.0 * (max_V - V(x)))); };
  out.c0 = integrate(W_at, 0.0, 1.0, qtol);

  double ac = std::abs(c);
  if (ac <= out.c0) {
    out.H_bar = max_V;
    // Shock position: +branch on [x_max, x_s], -branch on [x_s, x_max + 1],
    // fixed by int_0^1 (v' ) = 0 i.e. int u = c with u = +-W.
    auto mean_u = [&](double xs) {
      return integrate(W_at, x_max, xs, qtol) -
             integrate([&](double x) { return W_at(x - std::floor(x)); }, xs, x_max + 1.0, qtol);
    };
    double lo = x_max, hi = x_max + 1.0;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      (mean_u(mid) < c ? lo : hi) = mid;
    }
    double xs = 0.5 * (lo + hi);
    out.shock_x = xs - std::floor(xs);
    out.slope = [W_at, x_max, xs, c](double x) {
      double y = x - std::floor(x - x_max);  // representative in [x_max, x_max+1)
      return (y <= xs ? W_at(y) : -W_at(y)) - c;
    };
  } else {
    auto F = [&](double Hb) {
      return integrate([V, Hb](double x) { return std::sqrt(2.0 * (Hb - V(x))); }, 0.0, 1.0,
                       qtol);
    };
    double lo = max_V, hi = max_V + 0.5;
    while (F(hi) < ac) hi = max_V + 2.0 * (hi - max_V);
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (F(mid) < ac ? lo : hi) = mid;
    }
    out.H_bar = 0.5 * (lo + hi);
    double Hb = out.H_bar;
    double sgn = c > 0 ? 1.0 : -1.0;
    out.slope = [V, Hb, sgn, c](double x) { return sgn * std::sqrt(2.0 * (Hb - V(x))) - c; };
  }
  return out;
}

std::size_t EffectiveSurface::flat_index(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < d; ++a) {
    if (idx[a] < 0 || idx[a] >= static_cast<int>(axes[a].size()))
      throw std::out_of_range("EffectiveSurface: index outside grid");
    flat = flat * axes[a].size() + idx[a];
  }
  return flat;
}

std::vector<double> EffectiveSurface::c_at(std::span<const int> idx) const {
  std::vector<double> c(d);
  for (int a = 0; a < d; ++a) c[a] = axes[a][idx[a]];
  return c;
}

FdGradient fd_gradient(const EffectiveSurface& s, std::span<const int> idx) {
  FdGradient out;
  out.grad.resize(s.d);
  std::vector<int> j(idx.begin(), idx.end());
  for (int a = 0; a < s.d; ++a) {
    int n = static_cast<int>(s.axes[a].size());
    int lo = j[a] - 1, hi = j[a] + 1;
    if (lo < 0) {
      lo = j[a];
      out.one_sided = true;
    }
    if (hi >= n) {
      hi = j[a];
      out.one_sided = true;
    }
    if (lo == hi) throw std::invalid_argument("fd_gradient: axis has a single point");
    int orig = j[a];
    j[a] = hi;
    double Hhi = s.H[s.flat_index(j)];
    j[a] = lo;
    double Hlo = s.H[s.flat_index(j)];
    j[a] = orig;
    out.grad[a] = (Hhi - Hlo) / (s.axes[a][hi] - s.axes[a][lo]);
  }
  return out;
}

}  // namespace wkam
