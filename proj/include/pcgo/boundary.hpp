#pragma once

#include <array>
#include <vector>

#include "pcgo/fourier.hpp"

namespace pcgo {

// Quasi-uniform point set on the sphere r = radius with outward normals and
// a single equal-area quadrature weight.  Fibonacci placement keeps low-degree
// spherical polynomials integrated to a few parts in 1e4 at a hundred points.
struct BoundaryMesh {
  double radius = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<std::array<double, 3>> normals;
  double weight = 0;  // per-point, 4 pi R^2 / count

  int count() const { return static_cast<int>(points.size()); }
};

BoundaryMesh fibonacci_sphere_mesh(int count, double radius);

// Dirichlet data stack (f_0, ..., f_{m-1}) = (u, d_nu u, ...) sampled on a
// boundary mesh.
struct TraceStack {
  BoundaryMesh mesh;
  std::vector<std::vector<cplx>> f;  // f[j][b], j < orders

  int orders() const { return static_cast<int>(f.size()); }
  bool compatible(const TraceStack& o) const;
  double max_abs() const;
};

TraceStack zero_traces(const BoundaryMesh& mesh, int orders);

// gamma u = (u, d_nu u, ..., d_nu^{m-1} u) on the mesh, via the multinomial
// expansion of (nu . grad)^j and band-limited evaluation of the spectrum.
TraceStack trace_gamma(const Spectrum& u, const BoundaryMesh& mesh, int m);

// Real solid harmonics r^l Y_{l,mu} as Cartesian polynomials, degree l <= 3,
// enumerated idx = l^2 + (mu + l).
int solid_harmonic_count(int lmax);
int solid_harmonic_degree(int idx);
double solid_harmonic(int idx, const std::array<double, 3>& x);

// One boundary-basis element: the lattice field chi(r) r^(l + 2k) Y_{l,mu}
// (cut off well outside Omega so it is periodic), together with its exact
// traces on the mesh.  Every such polynomial is annihilated by (-Delta)^m
// for k < m, so with A = q = 0 the field itself solves the Dirichlet problem
// for its own trace data.
struct BasisGenerator {
  Spectrum field;
  TraceStack trace;
  int ell = 0;
  int radial_power = 0;  // l + 2k
};

std::vector<BasisGenerator> harmonic_generators(const Grid& g, const DomainSpec& dom,
                                                const BoundaryMesh& mesh, int lmax, int m);

// Cut-cell quadrature weights for integrals over the ball r <= radius:
// 1 deep inside, 0 outside, linear fraction across the one-cell crossing band.
std::vector<double> omega_weights(const Grid& g, double radius);

// sum_x w(x) f(x) conj(g(x)) dV with the weights above.
cplx weighted_inner(const std::vector<double>& w, const ScalarField& f, const ScalarField& g);

}  // namespace pcgo
