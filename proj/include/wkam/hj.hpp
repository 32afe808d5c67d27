#pragma once

#include <optional>
#include <vector>

#include "wkam/grid.hpp"
#include "wkam/models.hpp"

namespace wkam {

struct CflViolation : std::runtime_error {
  long long level;
  CflViolation(long long lvl, const std::string& what)
      : std::runtime_error(what), level(lvl) {}
};

struct LevelMonitor {
  double max_slope = 0.0;      // |D_x v|_inf at this level
  double semiconcavity = 0.0;  // M^k = sup second difference quotient
  double cfl_margin = 0.0;     // (d*lambda)^-1 - max|H_p| at the update using this level
};

struct IvpSolution {
  GridSpec grid;
  std::vector<double> c;
  std::vector<ScalarField> levels;  // v^0 .. v^steps
  std::vector<LevelMonitor> monitors;
  long long level0 = 0;  // time index of levels.front()
};

struct SolveOptions {
  bool check_cfl = true;
  bool record_monitors = true;
  bool keep_levels = true;  // false: only the final level is retained
};

// One explicit step of the backward equation:
//   v^{k+1}_m = (2d)^{-1} sum_w v^k_{m+w} - tau * H(x_m, t_k, c + (D_x v)^k_m).
ScalarField step_backward_scheme(const ScalarField& v, double t_k, std::span<const double> c,
                                 const HamiltonianModel& model);

// Forward-in-time mirror: v^{k-1}_m = (2d)^{-1} sum_w v^k_{m+w} + tau * H(...).
ScalarField step_forward_scheme(const ScalarField& v, double t_k, std::span<const double> c,
                                const HamiltonianModel& model);

IvpSolution solve_ivp(const ScalarField& v0, long long steps, std::span<const double> c,
                      const HamiltonianModel& model, const SchemeBounds* bounds = nullptr,
                      const SolveOptions& opt = {}, long long level0 = 0);

// v0 evolved over one time period (2K backward steps); same parity as v0.
ScalarField time_one_map(const ScalarField& v0, std::span<const double> c,
                         const HamiltonianModel& model, long long level0 = 0);

// xi*^{k+1}_m = H_p(x_m, t_k, c + (D_x v)^k_m), one field per step taken;
// entry j lives on the parity of level (level0 + j + 1).
std::vector<VectorField> minimizing_control_field(const IvpSolution& ivp,
                                                  const HamiltonianModel& model);

struct SemiconcavityReport {
  std::vector<double> M_k;      // per level
  std::vector<double> envelope; // M(t_k) from bounds
  std::vector<int> flagged;     // levels with M_k > M(t_k)
  bool below_M_plus_throughout = false;
};

SemiconcavityReport semiconcavity_monitor(const IvpSolution& ivp, const SchemeBounds& bounds);

double max_slope(const ScalarField& v);
double semiconcavity_constant(const ScalarField& v);

}  // namespace wkam
