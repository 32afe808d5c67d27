#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "wkam/grid.hpp"
#include "wkam/models.hpp"
#include "wkam/walk.hpp"
#include "wkam/weakkam.hpp"

namespace wkam {

// Ground-truth value of one backward step at a single node:
//   min over sampled xi of [tau L^{(c)}(x, t_k, xi) + sum_w rho(w; xi) v(node+w)]
// with xi sampled densely over the control box plus one local refinement.
double brute_force_step_value(const ScalarField& v, std::span<const int> node, double t_k,
                              std::span<const double> c, const HamiltonianModel& model,
                              int control_samples = 0);

// Exact expectation of the action by explicit path enumeration ((2d)^{l+1}
// paths); refuses l > 12.
double enumerate_paths_value(const ScalarField& v0, const ControlPolicy& xi,
                             std::span<const int> start, long long l, std::span<const double> c,
                             const HamiltonianModel& model);

// Analytic 1-D cell problem for H = p^2/2 + V(x):
//   c0 = int sqrt(2 (max V - V)); |c| <= c0 -> H_bar = max V, else
//   H_bar solves int sqrt(2 (H_bar - V)) = |c|.
struct CellProblem1D {
  double H_bar = 0.0;
  double c0 = 0.0;
  double max_V = 0.0;
  double shock_x = std::numeric_limits<double>::quiet_NaN();  // NaN when |c| > c0
  std::function<double(double)> slope;  // v_bar'(x) where defined
};

CellProblem1D cell_problem_1d(const HamiltonianModel& model, double c);

// Centered finite-difference gradient of an effective surface at grid index
// idx; falls back to one-sided at the boundary (flagged).
struct FdGradient {
  std::vector<double> grad;
  bool one_sided = false;
};

FdGradient fd_gradient(const EffectiveSurface& s, std::span<const int> idx);

}  // namespace wkam
