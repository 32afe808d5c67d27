#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "wkam/grid.hpp"
#include "wkam/models.hpp"

namespace wkam {

struct InvalidControl : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class WalkDirection { backward, forward };

// Control values per time level. levels[j] corresponds to absolute time level
// level0 + j; a periodic policy wraps modulo its level count (one time period
// when that count is 2K).
struct ControlPolicy {
  GridSpec grid;
  std::vector<VectorField> levels;
  long long level0 = 0;
  bool periodic = false;

  const VectorField& at_level(long long k) const;
  std::span<const double> xi(long long k, std::size_t site_idx) const {
    return at_level(k).at_index(site_idx);
  }

  static ControlPolicy constant(const GridSpec& g, std::span<const double> value);
};

// Law of the walk position at one time level, on the universal cover
// (unwrapped integer coordinates) so winding stays visible.
struct NodeDistribution {
  GridSpec grid;
  long long level = 0;
  std::map<std::vector<int>, double> masses;

  double total_mass() const;
};

struct PathSample {
  std::vector<int> start;
  std::uint64_t stream = 0;
  std::vector<std::vector<int>> gamma;   // cover coordinates per level, start first
  std::vector<std::vector<double>> eta;  // drift path, eta[0] = x(start)
};

// rho(omega) for a single node control; backward: 1/(2d) - (lambda/2) omega.xi,
// forward flips the sign. Order: +e_1, -e_1, +e_2, -e_2, ...
std::vector<double> transition_probs(std::span<const double> xi_node, WalkDirection dir,
                                     const GridSpec& g);

// Exact law of the walk for `steps` jumps from `start` at absolute level k0.
// Backward walks decrease the level, forward walks increase it.
std::vector<NodeDistribution> propagate_distribution(const GridSpec& g, std::span<const int> start,
                                                     long long k0, const ControlPolicy& xi,
                                                     long long steps, WalkDirection dir);

std::vector<PathSample> sample_paths(const GridSpec& g, std::span<const int> start, long long k0,
                                     const ControlPolicy& xi, long long steps,
                                     std::size_t n_paths, std::uint64_t seed, WalkDirection dir);

// Mean position per level via the exact drift recursion
// gamma_bar^k = gamma_bar^{k+1} - xi_bar^{k+1} tau, tracked without wrapping.
std::vector<std::vector<double>> averaged_path(const GridSpec& g, std::span<const int> start,
                                               long long k0, const ControlPolicy& xi,
                                               long long steps, WalkDirection dir);

// E[ sum_{0<k<=l+1} L^{(c)}(gamma^k, t_{k-1}, xi^k) tau + v0(gamma^0) ] for the
// backward walk started at `start` on level l+1, by exact dense propagation.
double action_functional(const ScalarField& v0, const ControlPolicy& xi,
                         std::span<const int> start, long long l, std::span<const double> c,
                         const HamiltonianModel& model);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
};

MonteCarloEstimate action_functional_mc(const ScalarField& v0, const ControlPolicy& xi,
                                        std::span<const int> start, long long l,
                                        std::span<const double> c, const HamiltonianModel& model,
                                        std::size_t n_paths, std::uint64_t seed);

struct VarianceLevel {
  long long level = 0;
  std::vector<double> sigma_tilde;  // E[|(eta-gamma)_i|^2]
  std::vector<double> sigma_hat;    // E[|(eta-gamma)_i|]
  double bound = 0.0;               // (t_{l+1} - t_k) h / lambda
};

// Exact joint law of (position, drift gap) for the backward walk.
std::vector<VarianceLevel> variance_diagnostic(const GridSpec& g, std::span<const int> start,
                                               long long k0, const ControlPolicy& xi,
                                               long long steps);

// Dense torus-wrapped propagation for long-horizon expectations. Mass is kept
// per site of the level's parity class; step() advances one level.
class WrappedWalker {
 public:
  WrappedWalker(const GridSpec& g, std::span<const int> start, long long k0);
  WrappedWalker(const GridSpec& g, std::vector<double> start_masses, long long k0);

  void step(const ControlPolicy& xi, WalkDirection dir);
  long long level() const { return level_; }
  const std::vector<double>& masses() const { return p_; }
  const GridSpec& grid() const { return grid_; }
  double total_mass() const;
  // Mean of a per-site vector quantity under the current law.
  std::vector<double> mean_control(const ControlPolicy& xi) const;

 private:
  GridSpec grid_;
  NeighborTable nt_;
  long long level_ = 0;
  std::vector<double> p_, scratch_;
};

}  // namespace wkam
