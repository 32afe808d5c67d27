#pragma once

#include <optional>
#include <vector>

#include "wkam/grid.hpp"
#include "wkam/hj.hpp"
#include "wkam/models.hpp"

namespace wkam {

struct PeriodicSolution {
  GridSpec grid;
  std::vector<double> c;
  double H_bar = 0.0;
  double bracket_width = 0.0;           // rigorous enclosure width for H_bar
  std::vector<ScalarField> levels;      // v^0 .. v^{2K-1}
  double residual = 0.0;                // max|phi(v^0) + H_bar - v^0|
  double stationarity_gap = -1.0;       // autonomous: max|v^2 + 2 tau H_bar - v^0|
  long long iterations = 0;
  bool converged = false;
};

struct EffectiveEstimate {
  double H_bar = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  long long periods = 0;
  bool converged = false;

  double bracket_width() const { return bracket_hi - bracket_lo; }
};

struct EffectiveSurface {
  std::vector<std::vector<double>> axes;  // c values per axis
  std::vector<double> H;                  // row-major over the axis product
  std::vector<double> bracket;            // enclosure width per point
  std::vector<double> residual;           // periodic residual per point
  std::vector<double> H_forward;          // optional, same layout (empty if unused)
  int d = 1;

  std::size_t size() const { return H.size(); }
  std::size_t flat_index(std::span<const int> idx) const;
  std::vector<double> c_at(std::span<const int> idx) const;
};

// Iterate the time-1 map from v0 (default zero field); each period the
// pointwise drop v - phi(v) brackets H_bar because phi preserves order and
// commutes with constants. Returns the midpoint once the bracket is below tol.
EffectiveEstimate estimate_effective_hamiltonian(std::span<const double> c,
                                                 const HamiltonianModel& model,
                                                 const ScalarField* v0 = nullptr,
                                                 long long max_periods = 20000,
                                                 double tol = 1e-10,
                                                 const GridSpec* grid = nullptr);

// Forward-in-time analogue built on step_forward_scheme.
EffectiveEstimate estimate_effective_hamiltonian_forward(std::span<const double> c,
                                                         const HamiltonianModel& model,
                                                         const GridSpec& grid,
                                                         long long max_periods = 20000,
                                                         double tol = 1e-10);

PeriodicSolution find_periodic_solution(std::span<const double> c, const HamiltonianModel& model,
                                        const GridSpec& grid, double tol = 1e-10,
                                        long long max_iters = 20000,
                                        const ScalarField* v0 = nullptr);

// Average of H(x_m, t_k, c + (D_x v)^k_m) over the even space-time nodes of one
// period (weight 2 h^d tau, equal to (2h)^d tau when d = 1).
double effective_identity_sum(const PeriodicSolution& sol, const HamiltonianModel& model);

EffectiveSurface effective_surface(const HamiltonianModel& model, const GridSpec& grid,
                                   const std::vector<std::vector<double>>& axes,
                                   double tol = 1e-10, bool with_forward = false);

struct ConvexityReport {
  double worst_violation = 0.0;  // max over triples of 2 H(mid) - H(lo) - H(hi)
  bool pass = true;
};

ConvexityReport check_midpoint_convexity(const EffectiveSurface& s, double tol);

struct LongTimeReport {
  std::vector<double> S;          // S^k = max_m (v^{k+2} - v^k)
  bool monotone = true;
  long long steps = 0;
  double final_even_distance = 0.0;  // max|v^{2k} + H_bar t - limit| at termination
  double final_odd_distance = 0.0;
  std::vector<double> even_distances;  // distance to the trajectory's own limit, per period
  ScalarField limit_even, limit_odd;
  double H_bar = 0.0;
};

LongTimeReport long_time_convergence(const ScalarField& v0, std::span<const double> c,
                                     const HamiltonianModel& model, long long max_steps,
                                     double settle_tol = 1e-13);

struct ScalingRow {
  int N = 0, K = 0;
  double h = 0.0;
  double H_delta = 0.0;
  double bracket = 0.0;
  double error = 0.0;       // vs analytic oracle (or successive difference)
  double interp_gap = 0.0;  // sup |w_this - w_prev| via interpolation, 0 for first row
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double fitted_slope = 0.0;  // log error vs log h
  bool oracle_based = true;
};

ScalingReport scaling_study(const HamiltonianModel& model, std::span<const double> c,
                            const std::vector<std::pair<int, int>>& grids, double tol = 1e-8);

struct DerivativeProbeRow {
  double h = 0.0;
  double max_error = 0.0;   // max |D_x v - oracle slope| at sampled even nodes
  double mean_error = 0.0;
};

struct DerivativeProbeReport {
  std::vector<DerivativeProbeRow> rows;
};

DerivativeProbeReport derivative_convergence_probe(const std::vector<PeriodicSolution>& sols,
                                                   const HamiltonianModel& model);

}  // namespace wkam
