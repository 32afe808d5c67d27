#include "wkam/models.hpp"

#include <cmath>
#include <numbers>

namespace wkam {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double quad(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return 0.5 * s;
}

HamiltonianModel mechanical(std::string name, int d, bool autonomous,
                            std::function<double(std::span<const double>, double)> V) {
  HamiltonianModel m;
  m.name = std::move(name);
  m.d = d;
  m.autonomous = autonomous;
  m.H = [V](std::span<const double> x, double t, std::span<const double> p) {
    return quad(p) + V(x, t);
  };
  m.Hp = [](std::span<const double>, double, std::span<const double> p, std::span<double> out) {
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
  };
  m.L = [V](std::span<const double> x, double t, std::span<const double> z) {
    return quad(z) - V(x, t);
  };
  m.Lzeta = [](std::span<const double>, double, std::span<const double> z, std::span<double> out) {
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i];
  };
  return m;
}

double param(const std::map<std::string, double>& params, const std::string& key, double dflt) {
  auto it = params.find(key);
  return it == params.end() ? dflt : it->second;
}

}  // namespace

HamiltonianModel builtin_model(const std::string& name,
                               const std::map<std::string, double>& params) {
  double a = param(params, "amplitude", 1.0);
  if (name == "free") {
    int d = static_cast<int>(param(params, "dim", 1.0));
    return mechanical(name, d, true, [](std::span<const double>, double) { return 0.0; });
  }
  if (name == "mechanical-1d") {
    return mechanical(name, 1, true, [a](std::span<const double> x, double) {
      return a * std::cos(two_pi * x[0]);
    });
  }
  if (name == "mechanical-2d") {
    return mechanical(name, 2, true, [a](std::span<const double> x, double) {
      return a * std::cos(two_pi * x[0]) * std::cos(two_pi * x[1]);
    });
  }
  if (name == "shifted-pendulum-nonautonomous") {
    double s = param(params, "shift", 0.2);
    return mechanical(name, 1, false, [a, s](std::span<const double> x, double t) {
      return a * std::cos(two_pi * (x[0] - s * std::sin(two_pi * t)));
    });
  }
  throw std::invalid_argument("builtin_model: unknown model '" + name + "'");
}

HamiltonianModel trig_poly_model(int d, const std::vector<TrigTerm>& terms) {
  for (const auto& t : terms)
    if (static_cast<int>(t.freq.size()) != d || static_cast<int>(t.phase.size()) != d)
      throw std::invalid_argument("trig_poly_model: term dimension mismatch");
  auto V = [terms](std::span<const double> x, double) {
    double s = 0.0;
    for (const auto& t : terms) {
      double prod = t.amp;
      for (std::size_t i = 0; i < x.size(); ++i)
        prod *= std::cos(two_pi * t.freq[i] * x[i] + t.phase[i]);
      s += prod;
    }
    return s;
  };
  return mechanical("trig-poly", d, true, V);
}

double SchemeBounds::M(double t) const {
  if (t <= 0.0) return std::numeric_limits<double>::infinity();
  if (eta_star <= 0.0) return M_plus + 1.0 / (Hpp_star * t);
  double e = std::exp(-eta_star * Hpp_star * t);
  return M_plus + eta_star * e / (1.0 - e);
}

namespace {

// Enumerate sample points: x over [0,1)^d (n per axis), t over [0,1) when the
// model is non-autonomous, p over a centered box (np per axis).
template <typename F>
void scan(int d, int nx, int nt, int np, double p_half, F&& fn) {
  std::vector<double> x(d), p(d);
  std::vector<int> ix(d, 0), ip(d, 0);
  auto advance = [](std::vector<int>& idx, int n) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < n) return true;
      idx[i] = 0;
    }
    return false;
  };
  do {
    for (int i = 0; i < d; ++i) x[i] = static_cast<double>(ix[i]) / nx;
    for (int it = 0; it < nt; ++it) {
      double t = static_cast<double>(it) / nt;
      std::fill(ip.begin(), ip.end(), 0);
      do {
        for (int i = 0; i < d; ++i)
          p[i] = np == 1 ? 0.0 : -p_half + 2.0 * p_half * ip[i] / (np - 1);
        fn(std::span<const double>(x), t, std::span<const double>(p));
      } while (advance(ip, np));
    }
  } while (advance(ix, nx));
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Jacobi eigenvalue sweep for small symmetric matrices (row-major).
double min_eigenvalue(std::vector<double> A, int n) {
  if (n == 1) return A[0];
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += A[i * n + j] * A[i * n + j];
    if (off < 1e-24) break;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double apq = A[i * n + j];
        if (std::abs(apq) < 1e-18) continue;
        double app = A[i * n + i], aqq = A[j * n + j];
        double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
        double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          double aik = A[i * n + k], ajk = A[j * n + k];
          A[i * n + k] = c * aik - s * ajk;
          A[j * n + k] = s * aik + c * ajk;
        }
        for (int k = 0; k < n; ++k) {
          double aki = A[k * n + i], akj = A[k * n + j];
          A[k * n + i] = c * aki - s * akj;
          A[k * n + j] = s * aki + c * akj;
        }
      }
  }
  double mn = A[0];
  for (int i = 1; i < n; ++i) mn = std::min(mn, A[i * n + i]);
  return mn;
}

}  // namespace

SchemeBounds compute_bounds(const HamiltonianModel& model, double r, double c_max,
                            const BoundsOptions& opt) {
  SchemeBounds b;
  b.r = r;
  b.c_max = c_max;
  b.d = model.d;
  int d = model.d;
  int nx = d == 1 ? opt.samples_per_axis : std::max(9, opt.samples_per_axis / 4);
  int nt = model.autonomous ? 1 : std::max(9, opt.samples_per_axis / 2);
  int np = opt.p_samples;

  // Control-speed cap lambda1: largest lambda with
  // d*lambda*max|H_p(x,t,c+u)| <= 1 over c in P, |u| <= r, by bisection.
  double A_r = 0.0;
  scan(d, nx, nt, np, c_max + r, [&](auto x, double t, auto p) {
    std::vector<double> hp(d);
    model.Hp(x, t, p, hp);
    A_r = std::max(A_r, max_abs(hp));
  });
  if (A_r <= 0.0) throw ModelNotTonelli("compute_bounds: H_p vanishes on the sampling box");
  if (opt.lambda1_override > 0.0) {
    b.lambda1 = opt.lambda1_override;
  } else if (model.lambda1_hint > 0.0) {
    b.lambda1 = model.lambda1_hint;
  } else {
    double lo = 0.0, hi = 1.0 / (d * A_r) * 4.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (d * mid * A_r <= 1.0 ? lo : hi) = mid;
    }
    b.lambda1 = lo;
  }

  double zeta_half = 1.0 / (d * b.lambda1);
  double lz_max = 0.0;
  scan(d, nx, nt, np, zeta_half, [&](auto x, double t, auto z) {
    std::vector<double> lz(d);
    model.Lzeta(x, t, z, lz);
    lz_max = std::max(lz_max, max_abs(lz));
  });
  b.u_star = lz_max + c_max;  // max over c in P of |L_zeta - c|

  double p_half = c_max + b.u_star;
  double hp_max = 0.0;
  scan(d, nx, nt, np, p_half, [&](auto x, double t, auto p) {
    std::vector<double> hp(d);
    model.Hp(x, t, p, hp);
    hp_max = std::max(hp_max, max_abs(hp));
  });
  b.Hp_star = hp_max;

  // Second derivatives by central differences over the same box.
  int nxh = d == 1 ? std::max(17, opt.samples_per_axis / 2) : 12;
  int nph = 9;
  double eps = 1e-4;
  double hxx = 0.0, hxp = 0.0, hpp_min = std::numeric_limits<double>::infinity();
  std::vector<double> hess(d * d);
  scan(d, nxh, nt, nph, p_half, [&](auto x, double t, auto p) {
    std::vector<double> xa(x.begin(), x.end()), pa(p.begin(), p.end());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        // d2H/dx_i dx_j
        double v;
        if (i == j) {
          double c0 = model.H(xa, t, pa);
          xa[i] = x[i] + eps;
          double cp = model.H(xa, t, pa);
          xa[i] = x[i] - eps;
          double cm = model.H(xa, t, pa);
          xa[i] = x[i];
          v = (cp - 2.0 * c0 + cm) / (eps * eps);
        } else {
          double s = 0.0;
          for (int si = -1; si <= 1; si += 2)
            for (int sj = -1; sj <= 1; sj += 2) {
              xa[i] = x[i] + si * eps;
              xa[j] = x[j] + sj * eps;
              s += si * sj * model.H(xa, t, pa);
            }
          xa[i] = x[i];
          xa[j] = x[j];
          v = s / (4.0 * eps * eps);
        }
        hxx = std::max(hxx, std::abs(v));
        // d2H/dx_i dp_j via H_p differences in x
        std::vector<double> hp_p(d), hp_m(d);
        xa[i] = x[i] + eps;
        model.Hp(xa, t, pa, hp_p);
        xa[i] = x[i] - eps;
        model.Hp(xa, t, pa, hp_m);
        xa[i] = x[i];
        hxp = std::max(hxp, std::abs((hp_p[j] - hp_m[j]) / (2.0 * eps)));
        // d2H/dp_i dp_j via H_p differences in p
        pa[i] = p[i] + eps;
        model.Hp(xa, t, pa, hp_p);
        pa[i] = p[i] - eps;
        model.Hp(xa, t, pa, hp_m);
        pa[i] = p[i];
        hess[i * d + j] = (hp_p[j] - hp_m[j]) / (2.0 * eps);
      }
    hpp_min = std::min(hpp_min, min_eigenvalue(hess, d));
  });
  if (hpp_min <= 0.0)
    throw ModelNotTonelli("compute_bounds: H_pp not positive definite on samples");
  // Snap tiny finite-difference noise on exactly-vanishing couplings.
  if (hxx < 1e-7) hxx = 0.0;
  if (hxp < 1e-7) hxp = 0.0;
  b.Hxx_star = hxx;
  b.Hxp_star = hxp;
  b.Hpp_star = hpp_min;

  double disc = std::sqrt((1.0 + d) * hxp * hxp + hpp_min * hxx);
  b.M_plus = (hxp + disc) / hpp_min;
  b.M_minus = (hxp - disc) / hpp_min;
  b.eta_star = b.M_plus - b.M_minus;

  b.lambda_max = std::min(1.0 / (2.0 * d * r * hpp_min + d * b.Hp_star),
                          1.0 / (10.0 * r * hpp_min));
  double tmax = std::numeric_limits<double>::infinity();
  if (hxp > 0.0) tmax = std::min(tmax, 1.0 / (2.0 * d * hxp));
  if (b.eta_star > 0.0) {
    tmax = std::min(tmax, 1.0 / (hpp_min * b.eta_star));
    tmax = std::min(tmax, std::log(2.0) / (b.eta_star * hpp_min));
  }
  if (disc > 0.0) tmax = std::min(tmax, 1.0 / (4.0 * disc));
  b.tau_max = tmax;
  return b;
}

StepSizeReport validate_step_sizes(const SchemeBounds& b, const GridSpec& g) {
  StepSizeReport rep;
  int d = b.d;
  double lam = g.lambda, tau = g.tau;
  auto add = [&rep](std::string name, double limit, double actual, bool pass) {
    rep.checks.push_back({std::move(name), limit, actual, pass});
    rep.pass = rep.pass && pass;
  };
  add("lambda < lambda1", b.lambda1, lam, lam < b.lambda1);
  double lim1 = (1.0 - 2.0 * d * b.Hxp_star * tau) / (2.0 * d * b.r * b.Hpp_star + d * b.Hp_star);
  add("lambda <= (1-2d*Hxp*tau)/(2d*r*Hpp + d*Hp)", lim1, lam, lam <= lim1);
  double lim2 = 1.0 / (10.0 * b.r * b.Hpp_star);
  add("lambda <= 1/(10*r*Hpp)", lim2, lam, lam <= lim2);
  if (b.Hxp_star > 0.0) {
    double lim = 1.0 / (2.0 * d * b.Hxp_star);
    add("tau < 1/(2d*Hxp)", lim, tau, tau < lim);
  }
  double denom = 2.0 * d * (b.Hpp_star * b.M_plus + b.Hxp_star);
  if (denom > 0.0) {
    double lim = (1.0 - d * lam * b.Hp_star) / denom;
    add("tau < (1-d*lambda*Hp)/(2d*(Hpp*M+ + Hxp))", lim, tau, tau < lim);
  }
  if (b.eta_star > 0.0) {
    add("tau < 1/(Hpp*(M+ - M-))", 1.0 / (b.Hpp_star * b.eta_star), tau,
        tau < 1.0 / (b.Hpp_star * b.eta_star));
    add("tau < log2/(eta*Hpp)", std::log(2.0) / (b.eta_star * b.Hpp_star), tau,
        tau < std::log(2.0) / (b.eta_star * b.Hpp_star));
  }
  double disc = std::sqrt((1.0 + d) * b.Hxp_star * b.Hxp_star + b.Hpp_star * b.Hxx_star);
  if (disc > 0.0) add("tau < 1/(4*sqrt((1+d)*Hxp^2 + Hpp*Hxx))", 1.0 / (4.0 * disc), tau,
                      tau < 1.0 / (4.0 * disc));
  return rep;
}

}  // namespace wkam
