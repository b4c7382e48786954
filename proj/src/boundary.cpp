#include "pcgo/boundary.hpp"

#include <cmath>

#include "pcgo/forms.hpp"

namespace pcgo {

BoundaryMesh fibonacci_sphere_mesh(int count, double radius) {
  require(count >= 8, "boundary mesh: need at least 8 points");
  require(radius > 0, "boundary mesh: radius must be positive");
  BoundaryMesh mesh;
  mesh.radius = radius;
  mesh.points.resize(count);
  mesh.normals.resize(count);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / count;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    std::array<double, 3> n{rho * std::cos(phi), rho * std::sin(phi), z};
    mesh.normals[i] = n;
    mesh.points[i] = {radius * n[0], radius * n[1], radius * n[2]};
  }
  mesh.weight = 4.0 * kPi * radius * radius / count;
  return mesh;
}

bool TraceStack::compatible(const TraceStack& o) const {
  if (orders() != o.orders()) return false;
  if (mesh.count() != o.mesh.count() || mesh.radius != o.mesh.radius) return false;
  return true;
}

double TraceStack::max_abs() const {
  double m = 0;
  for (const auto& row : f)
    for (const auto& z : row) m = std::max(m, std::abs(z));
  return m;
}

TraceStack zero_traces(const BoundaryMesh& mesh, int orders) {
  TraceStack t;
  t.mesh = mesh;
  t.f.assign(orders, std::vector<cplx>(mesh.count(), cplx(0, 0)));
  return t;
}

TraceStack trace_gamma(const Spectrum& u, const BoundaryMesh& mesh, int m) {
  require(m >= 1, "trace_gamma: need at least one trace order");
  require(u.grid.dim == 3, "trace_gamma: boundary meshes are spherical, dim 3 only");
  TraceStack t = zero_traces(mesh, m);
  const int nb = mesh.count();
  static const cplx iunit[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (int j = 0; j < m; ++j) {
    // (nu . grad)^j u = i^j sum_{|beta|=j} (j!/beta!) nu^beta D^beta u, with
    // nu held fixed at each mesh point (straight-ray directional derivative).
    cplx ij = iunit[j % 4];
    for (const auto& beta : multi_indices(3, j)) {
      Spectrum db = derivative_d_multi(u, beta);
      std::vector<cplx> vals = eval_at_points(db, mesh.points);
      double wmult = multinomial_weight(j, beta);
      for (int b = 0; b < nb; ++b) {
        double nupow = 1;
        for (int a = 0; a < 3; ++a)
          for (int rep = 0; rep < beta[a]; ++rep) nupow *= mesh.normals[b][a];
        t.f[j][b] += ij * wmult * nupow * vals[b];
      }
    }
  }
  return t;
}

int solid_harmonic_count(int lmax) { return (lmax + 1) * (lmax + 1); }

int solid_harmonic_degree(int idx) {
  int l = 0;
  while ((l + 1) * (l + 1) <= idx) ++l;
  return l;
}

double solid_harmonic(int idx, const std::array<double, 3>& p) {
  require(idx >= 0 && idx < 16, "solid_harmonic: degrees above 3 not tabulated");
  const double x = p[0], y = p[1], z = p[2];
  const double r2 = x * x + y * y + z * z;
  switch (idx) {
    case 0: return 0.28209479177387814;
    case 1: return 0.4886025119029199 * y;
    case 2: return 0.4886025119029199 * z;
    case 3: return 0.4886025119029199 * x;
    case 4: return 1.0925484305920792 * x * y;
    case 5: return 1.0925484305920792 * y * z;
    case 6: return 0.31539156525252005 * (3.0 * z * z - r2);
    case 7: return 1.0925484305920792 * z * x;
    case 8: return 0.5462742152960396 * (x * x - y * y);
    case 9: return 0.5900435899266435 * (3.0 * x * x - y * y) * y;
    case 10: return 2.890611442640554 * x * y * z;
    case 11: return 0.4570457994644658 * y * (5.0 * z * z - r2);
    case 12: return 0.3731763325901154 * z * (5.0 * z * z - 3.0 * r2);
    case 13: return 0.4570457994644658 * x * (5.0 * z * z - r2);
    case 14: return 1.445305721320277 * z * (x * x - y * y);
    case 15: return 0.5900435899266435 * x * (x * x - 3.0 * y * y);
    default: return 0;
  }
}

std::vector<BasisGenerator> harmonic_generators(const Grid& g, const DomainSpec& dom,
                                                const BoundaryMesh& mesh, int lmax, int m) {
  require(lmax >= 0 && lmax <= 3, "harmonic_generators: lmax must be in [0, 3]");
  require(m >= 1, "harmonic_generators: m must be positive");
  dom.validate(g);
  require(mesh.radius >= dom.omega_radius - 1e-12,
          "harmonic_generators: mesh sphere must not cut into Omega");

  // The cutoff must be identically 1 past the sphere so traces come from the
  // pure polynomial, and reach 0 before the box corners make r^l Y large.
  // C^6 smoothness keeps both the off-lattice interpolation error and the
  // ringing under (-Delta)^m small.
  double off = 0.5 * g.length - 2.5 * g.spacing();
  require(off - mesh.radius >= 3.0 * g.spacing(),
          "harmonic_generators: no room for the cutoff tail past the mesh sphere");
  double on = mesh.radius + 0.2 * (off - mesh.radius);
  ScalarField chi = radial_mask_c6(g, on, off);

  std::vector<BasisGenerator> out;
  const int nharm = solid_harmonic_count(lmax);
  for (int k = 0; k < m; ++k) {
    for (int idx = 0; idx < nharm; ++idx) {
      BasisGenerator gen;
      gen.ell = solid_harmonic_degree(idx);
      gen.radial_power = gen.ell + 2 * k;

      ScalarField fld(g);
      for (std::size_t i = 0; i < fld.size(); ++i) {
        auto xpt = g.point(i);
        double r2 = xpt[0] * xpt[0] + xpt[1] * xpt[1] + xpt[2] * xpt[2];
        double radial = 1;
        for (int rep = 0; rep < k; ++rep) radial *= r2;
        fld.v[i] = chi.v[i] * radial * solid_harmonic(idx, xpt);
      }
      gen.field = fft_forward(fld);

      // d_nu^j of r^(l+2k) Y_l on the sphere: homogeneity gives the falling
      // factorial of the total degree.
      gen.trace = zero_traces(mesh, m);
      const double R = mesh.radius;
      const int deg = gen.radial_power;
      for (int b = 0; b < mesh.count(); ++b) {
        double ylm = solid_harmonic(idx, mesh.points[b]) / std::pow(R, gen.ell);
        double fall = 1.0;
        for (int j = 0; j < m; ++j) {
          gen.trace.f[j][b] = fall * std::pow(R, deg - j) * ylm;
          fall *= (deg - j);
        }
      }
      out.push_back(std::move(gen));
    }
  }
  return out;
}

std::vector<double> omega_weights(const Grid& g, double radius) {
  std::vector<double> w(g.size(), 0.0);
  const double dx = g.spacing();
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto x = g.point(i);
    double r = 0;
    for (int a = 0; a < g.dim; ++a) r += x[a] * x[a];
    r = std::sqrt(r);
    double t = 0.5 + (radius - r) / dx;
    w[i] = std::min(1.0, std::max(0.0, t));
  }
  return w;
}

cplx weighted_inner(const std::vector<double>& w, const ScalarField& f, const ScalarField& g) {
  require(w.size() == f.size() && f.size() == g.size(), "weighted_inner: size mismatch");
  cplx acc(0, 0);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0.0) acc += w[i] * f.v[i] * std::conj(g.v[i]);
  return acc * f.grid.cell_volume();
}

}  // namespace pcgo
