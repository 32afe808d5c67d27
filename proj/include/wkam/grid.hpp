#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wkam {

enum class Parity { even, odd };

inline Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

// Staggered periodic lattice: spatial step h = 1/(2N), time step tau = 1/(2K).
// A space-time node (m, k) is "odd" when m_1 + ... + m_d + k is odd; scheme
// unknowns live on the odd class, discrete space derivatives on the even one.
struct GridSpec {
  int d = 1;
  int N = 1;
  int K = 1;
  double h = 0.5;
  double tau = 0.5;
  double lambda = 1.0;

  static GridSpec create(int d, int N, int K);

  int side() const { return 2 * N; }
  std::size_t num_sites() const;

  int wrap(int c) const {
    int s = side();
    c %= s;
    return c < 0 ? c + s : c;
  }

  std::size_t index_of(std::span<const int> m) const;        // wraps
  void coords_of(std::size_t idx, std::span<int> m) const;   // inverse of index_of
  Parity site_parity(std::size_t idx) const;
  Parity parity_of(std::span<const int> m) const;

  // Spatial parity of walk/scheme nodes at time level k (G~ convention:
  // level 0 fields live on odd spatial nodes).
  Parity level_parity(long long k) const {
    long long r = k % 2;
    return r == 0 ? Parity::odd : Parity::even;
  }

  double xcoord(int mi) const { return h * mi; }
  double time(long long k) const { return tau * k; }

  std::vector<std::size_t> sites(Parity p) const;
};

// Neighbor lookup table: for site idx, nb[idx*2d + 2*axis + 0/1] is the wrapped
// index of m + e_axis / m - e_axis. Built once per hot loop.
struct NeighborTable {
  int d = 0;
  std::vector<std::size_t> nb;

  static NeighborTable build(const GridSpec& g);
  std::size_t plus(std::size_t idx, int axis) const { return nb[idx * 2 * d + 2 * axis]; }
  std::size_t minus(std::size_t idx, int axis) const { return nb[idx * 2 * d + 2 * axis + 1]; }
};

// Values over one parity class of a single time level. Storage spans the full
// (2N)^d cube (off-parity entries stay zero) for O(1) neighbor arithmetic.
struct ScalarField {
  GridSpec grid;
  Parity parity = Parity::odd;
  std::vector<double> values;

  static ScalarField zeros(const GridSpec& g, Parity p);

  double at(std::span<const int> m) const { return values[grid.index_of(m)]; }
  double& at(std::span<const int> m) { return values[grid.index_of(m)]; }
};

struct VectorField {
  GridSpec grid;
  Parity parity = Parity::odd;
  std::vector<double> values;  // num_sites * d, component-contiguous per site

  static VectorField zeros(const GridSpec& g, Parity p);

  std::span<const double> at_index(std::size_t idx) const {
    return {values.data() + idx * grid.d, static_cast<std::size_t>(grid.d)};
  }
  std::span<double> at_index(std::size_t idx) {
    return {values.data() + idx * grid.d, static_cast<std::size_t>(grid.d)};
  }
};

// (D_{x^j} v)_m = (v_{m+e_j} - v_{m-e_j}) / (2h), defined on the opposite parity.
VectorField discrete_dx(const ScalarField& v);

// (D_t v)^{k+1}_m = (v^{k+1}_m - (2d)^{-1} sum_{w in B} v^k_{m+w}) / tau.
ScalarField discrete_dt(const ScalarField& v_next, const ScalarField& v);

// Continuous extension of a field on the odd class: successive 1-D linear
// blends along e_1..e_d over cubes of side 2h whose corners sit on the
// sublattice base + 2Z^d (base = (1,0,...,0)). Periodic in every coordinate.
class Interpolant {
 public:
  Interpolant(ScalarField v);
  double operator()(std::span<const double> x) const;
  double operator()(double x) const {  // d=1 convenience
    return (*this)(std::span<const double>(&x, 1));
  }

 private:
  ScalarField v_;
};

Interpolant lipschitz_interpolate(const ScalarField& v);

}  // namespace wkam
