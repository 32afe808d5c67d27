#include "wkam/grid.hpp"

#include <cmath>

namespace wkam {

GridSpec GridSpec::create(int d, int N, int K) {
  if (d < 1 || N < 1 || K < 1) throw std::invalid_argument("GridSpec: d, N, K must be positive");
  GridSpec g;
  g.d = d;
  g.N = N;
  g.K = K;
  g.h = 1.0 / (2 * N);
  g.tau = 1.0 / (2 * K);
  g.lambda = g.tau / g.h;
  return g;
}

std::size_t GridSpec::num_sites() const {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(side());
  return n;
}

std::size_t GridSpec::index_of(std::span<const int> m) const {
  std::size_t idx = 0;
  for (int i = 0; i < d; ++i) idx = idx * side() + wrap(m[i]);
  return idx;
}

void GridSpec::coords_of(std::size_t idx, std::span<int> m) const {
  for (int i = d - 1; i >= 0; --i) {
    m[i] = static_cast<int>(idx % side());
    idx /= side();
  }
}

Parity GridSpec::site_parity(std::size_t idx) const {
  int sum = 0;
  for (int i = 0; i < d; ++i) {
    sum += static_cast<int>(idx % side());
    idx /= side();
  }
  return sum % 2 == 0 ? Parity::even : Parity::odd;
}

Parity GridSpec::parity_of(std::span<const int> m) const {
  int sum = 0;
  for (int i = 0; i < d; ++i) sum += wrap(m[i]);
  return sum % 2 == 0 ? Parity::even : Parity::odd;
}

std::vector<std::size_t> GridSpec::sites(Parity p) const {
  std::vector<std::size_t> out;
  out.reserve(num_sites() / 2);
  for (std::size_t idx = 0; idx < num_sites(); ++idx)
    if (site_parity(idx) == p) out.push_back(idx);
  return out;
}

NeighborTable NeighborTable::build(const GridSpec& g) {
  NeighborTable t;
  t.d = g.d;
  std::size_t n = g.num_sites();
  t.nb.resize(n * 2 * g.d);
  std::vector<int> m(g.d);
  for (std::size_t idx = 0; idx < n; ++idx) {
    g.coords_of(idx, m);
    for (int a = 0; a < g.d; ++a) {
      int orig = m[a];
      m[a] = orig + 1;
      t.nb[idx * 2 * g.d + 2 * a] = g.index_of(m);
      m[a] = orig - 1;
      t.nb[idx * 2 * g.d + 2 * a + 1] = g.index_of(m);
      m[a] = orig;
    }
  }
  return t;
}

ScalarField ScalarField::zeros(const GridSpec& g, Parity p) {
  ScalarField f;
  f.grid = g;
  f.parity = p;
  f.values.assign(g.num_sites(), 0.0);
  return f;
}

VectorField VectorField::zeros(const GridSpec& g, Parity p) {
  VectorField f;
  f.grid = g;
  f.parity = p;
  f.values.assign(g.num_sites() * g.d, 0.0);
  return f;
}

VectorField discrete_dx(const ScalarField& v) {
  const GridSpec& g = v.grid;
  VectorField out = VectorField::zeros(g, opposite(v.parity));
  NeighborTable nt = NeighborTable::build(g);
  double inv2h = 1.0 / (2.0 * g.h);
  for (std::size_t idx : g.sites(out.parity)) {
    auto comp = out.at_index(idx);
    for (int a = 0; a < g.d; ++a)
      comp[a] = (v.values[nt.plus(idx, a)] - v.values[nt.minus(idx, a)]) * inv2h;
  }
  return out;
}

ScalarField discrete_dt(const ScalarField& v_next, const ScalarField& v) {
  const GridSpec& g = v.grid;
  if (v_next.parity == v.parity) throw std::invalid_argument("discrete_dt: parities must alternate");
  ScalarField out = ScalarField::zeros(g, v_next.parity);
  NeighborTable nt = NeighborTable::build(g);
  double inv2d = 1.0 / (2.0 * g.d);
  for (std::size_t idx : g.sites(out.parity)) {
    double avg = 0.0;
    for (int a = 0; a < g.d; ++a)
      avg += v.values[nt.plus(idx, a)] + v.values[nt.minus(idx, a)];
    out.values[idx] = (v_next.values[idx] - avg * inv2d) / g.tau;
  }
  return out;
}

Interpolant::Interpolant(ScalarField v) : v_(std::move(v)) {
  if (v_.parity != Parity::odd)
    throw std::invalid_argument("lipschitz_interpolate: field must live on the odd class");
}

double Interpolant::operator()(std::span<const double> x) const {
  const GridSpec& g = v_.grid;
  if (static_cast<int>(x.size()) != g.d)
    throw std::invalid_argument("Interpolant: dimension mismatch");
  // Cell base node: b + 2z with b = (1,0,...,0), chosen so x lies in
  // [x_base, x_base + 2h]^d; corners are base + 2s, s in {0,1}^d.
  std::vector<int> base(g.d);
  std::vector<double> w(g.d);
  for (int i = 0; i < g.d; ++i) {
    int b = (i == 0) ? 1 : 0;
    double s = (x[i] / g.h - b) / 2.0;
    double fl = std::floor(s);
    base[i] = b + 2 * static_cast<int>(fl);
    w[i] = s - fl;  // in [0,1)
  }
  // Successive 1-D blends: axis 0 innermost.
  std::size_t corners = std::size_t{1} << g.d;
  double acc = 0.0;
  std::vector<int> m(g.d);
  for (std::size_t s = 0; s < corners; ++s) {
    double weight = 1.0;
    for (int i = 0; i < g.d; ++i) {
      bool hi = (s >> i) & 1u;
      m[i] = base[i] + (hi ? 2 : 0);
      weight *= hi ? w[i] : 1.0 - w[i];
    }
    acc += weight * v_.at(m);
  }
  return acc;
}

Interpolant lipschitz_interpolate(const ScalarField& v) { return Interpolant(v); }

}  // namespace wkam
