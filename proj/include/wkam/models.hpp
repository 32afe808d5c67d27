#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wkam/grid.hpp"

namespace wkam {

struct ModelNotTonelli : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tonelli pair (H, L) with first derivatives, 1-periodic in x and t.
struct HamiltonianModel {
  std::string name;
  int d = 1;
  bool autonomous = true;
  // Optional cap on control speed declared by the model; 0 means "derive it".
  double lambda1_hint = 0.0;

  std::function<double(std::span<const double> x, double t, std::span<const double> p)> H;
  std::function<void(std::span<const double> x, double t, std::span<const double> p,
                     std::span<double> out)>
      Hp;
  std::function<double(std::span<const double> x, double t, std::span<const double> zeta)> L;
  std::function<void(std::span<const double> x, double t, std::span<const double> zeta,
                     std::span<double> out)>
      Lzeta;
};

// One term of a trigonometric-polynomial potential:
//   amp * prod_i cos(2*pi*freq[i]*x_i + phase[i]).
struct TrigTerm {
  double amp = 0.0;
  std::vector<int> freq;
  std::vector<double> phase;
};

// name in {free, mechanical-1d, mechanical-2d, shifted-pendulum-nonautonomous}.
// params: "amplitude" scales the potential (default 1), "shift" sets the
// travelling-wave amplitude of the non-autonomous model (default 0.2).
HamiltonianModel builtin_model(const std::string& name,
                               const std::map<std::string, double>& params = {});

// H = |p|^2/2 + V(x) with V a sum of trigonometric terms.
HamiltonianModel trig_poly_model(int d, const std::vector<TrigTerm>& terms);

// Extremal constants behind the semiconcavity estimate and the step-size
// conditions. All suprema/infima are taken by dense sampling.
struct SchemeBounds {
  double r = 1.0;        // initial slope bound
  double c_max = 0.0;    // P = [-c_max, c_max]^d
  double lambda1 = 0.0;  // control-speed cap: |xi|_inf <= 1/(d*lambda1)
  double u_star = 0.0;
  double Hp_star = 0.0;
  double Hxx_star = 0.0;
  double Hxp_star = 0.0;
  double Hpp_star = 0.0;  // inf eigenvalue, must be > 0
  double M_plus = 0.0;
  double M_minus = 0.0;
  double eta_star = 0.0;
  double lambda_max = 0.0;
  double tau_max = 0.0;
  int d = 1;

  double cfl_cap(double lam) const { return 1.0 / (d * lam); }
  // Semiconcavity envelope M(t); for eta_star = 0 the degenerate limit
  // M_plus + 1/(Hpp_star * t) is used.
  double M(double t) const;
};

struct BoundsOptions {
  int samples_per_axis = 64;  // x and t sampling density
  int p_samples = 33;         // momentum-box sampling density per axis
  double lambda1_override = 0.0;
};

SchemeBounds compute_bounds(const HamiltonianModel& model, double r, double c_max,
                            const BoundsOptions& opt = {});

struct StepSizeCheck {
  std::string name;
  double limit = 0.0;
  double actual = 0.0;
  bool pass = true;
};

struct StepSizeReport {
  std::vector<StepSizeCheck> checks;
  bool pass = true;
};

StepSizeReport validate_step_sizes(const SchemeBounds& b, const GridSpec& g);

}  // namespace wkam
