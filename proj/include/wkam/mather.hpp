#pragma once

#include <vector>

#include "wkam/grid.hpp"
#include "wkam/models.hpp"
#include "wkam/walk.hpp"
#include "wkam/weakkam.hpp"

namespace wkam {

enum class MeasureMode { spacetime, autonomous };

struct SupportNode {
  long long level = 0;  // time level in [0, 2K) for spacetime, 0 for autonomous
  std::size_t site = 0;
  double mass = 0.0;
  std::vector<double> control;
};

// Time-averaged law of a controlled backward walk projected to the periodic
// cell (weight tau / t_l per visited level), with the control value attached
// at every support node.
struct OccupationMeasure {
  GridSpec grid;
  MeasureMode mode = MeasureMode::spacetime;
  long long horizon = 0;  // number of backward steps l
  std::vector<SupportNode> nodes;
  double total_mass = 0.0;  // before support thresholding
  double support_threshold = 1e-9;
};

OccupationMeasure occupation_measure(const ControlPolicy& xi, std::span<const int> start,
                                     long long l, MeasureMode mode,
                                     double support_threshold = 1e-9);

// Same walk started from an explicit distribution over the level-0 parity
// class (dense over all sites, off-parity entries zero).
OccupationMeasure occupation_measure(const ControlPolicy& xi,
                                     const std::vector<double>& start_masses, long long l,
                                     MeasureMode mode, double support_threshold = 1e-9);

// |integral of f d mu| with f(x_m, t_k, zeta) = (D_t g)^k_m + (D_x g)^{k-1}_m . zeta.
// g_levels[j] is the test field at level j (extended periodically; parity of
// g_levels[j] must match the level-j parity, and the count must be even).
// Autonomous measures use the site parity to pick the level residue.
double holonomic_check(const OccupationMeasure& mu, const std::vector<ScalarField>& g_levels);

// Control fields of the optimal policy attached to a periodic solution:
// level k carries H_p(x_m, t_{k-1}, c + (D_x v)^{k-1}_m), periodic over 2K.
ControlPolicy minimizing_periodic_policy(const PeriodicSolution& sol,
                                         const HamiltonianModel& model);

// Power iteration of the one-period walk map until total-variation Cauchy;
// returns a dense stationary distribution over the level-0 parity class.
std::vector<double> stationary_distribution(const ControlPolicy& xi, const GridSpec& g,
                                            double tv_tol = 1e-14,
                                            long long max_periods = 20000);

struct MatherApproximation {
  std::vector<double> c;
  OccupationMeasure measure;  // at the final horizon
  double action = 0.0;        // integral of L^{(c)} d mu
  double H_bar = 0.0;
  double defect = 0.0;        // action + H_bar
  double defect_bound = 0.0;  // (max v - min v) / t_l at the final horizon
  std::vector<long long> horizons;
  std::vector<double> defects;        // per horizon
  std::vector<double> defect_bounds;  // per horizon
  bool converged = false;
};

// Occupation measures of the optimal policy over an increasing horizon
// schedule until |action + H_bar| <= tol. stationary_start replaces the
// single-node start by the walk's own stationary distribution, removing the
// arbitrariness of the anchor node.
MatherApproximation mather_measure(const PeriodicSolution& sol, const HamiltonianModel& model,
                                   const std::vector<long long>& horizons, double tol = 1e-6,
                                   bool stationary_start = true,
                                   double support_threshold = 1e-9);

// Asymptotic mean velocity of the optimal walk: the per-step average of the
// mean control over `horizon` backward steps (exact drift recursion).
std::vector<double> rotation_vector(const PeriodicSolution& sol, const HamiltonianModel& model,
                                    long long horizon, bool stationary_start = true);

// Intersection over the given periodic solutions of their optimal-control
// graphs; a node stays a member when every solution's control matches the
// first one within control_tol.
struct AubrySet {
  GridSpec grid;
  std::vector<VectorField> controls;      // level k field on the level-k parity
  std::vector<std::vector<char>> member;  // [level][site]
  double control_tol = 1e-6;

  bool contains(long long level, std::size_t site) const;
  std::span<const double> control_at(long long level, std::size_t site) const;
};

AubrySet aubry_set(const std::vector<PeriodicSolution>& sols, const HamiltonianModel& model,
                   double control_tol = 1e-6);

struct ContainmentReport {
  bool pass = true;
  double worst_mismatch = 0.0;
  std::size_t checked = 0;
};

// Every support node of the measure must lie in the Aubry set with matching
// control.
ContainmentReport mather_support_in_aubry(const OccupationMeasure& mu, const AubrySet& aubry);

struct UniquenessReport {
  double gap_on_support = 0.0;  // after matching the two anchors
  double gap_global = 0.0;
  bool agree_on_support = false;
  bool pass = false;  // agreement on the support forces global agreement
};

UniquenessReport uniqueness_on_mather_set(const PeriodicSolution& a, const PeriodicSolution& b,
                                          const OccupationMeasure& support, double tol,
                                          double factor = 10.0);

}  // namespace wkam
