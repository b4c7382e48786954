#include "pcgo/operators.hpp"

#include <cmath>
#include <limits>

namespace pcgo {

namespace {

// Even lattices carry an unpaired -N/2 plane; coefficient content there has
// no +N/2 partner, which would leave the discrete operator without an exact
// adjoint. Smooth coefficients hold only roundoff-to-mollified tails at that
// plane, so it is dropped at construction.
void drop_nyquist_planes(Spectrum& s) {
  const Grid& g = s.grid;
  if (g.points % 2 != 0) return;
  int ny = g.points / 2;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto ix = g.unflatten(i);
    for (int a = 0; a < g.dim; ++a)
      if (ix[a] == ny) {
        s.c[i] = 0;
        break;
      }
  }
}

}  // namespace

DiscreteOperator DiscreteOperator::free_operator(const ProblemParams& params, const Grid& g) {
  params.validate();
  DiscreteOperator op;
  op.params = params;
  op.grid = g;
  return op;
}

DiscreteOperator DiscreteOperator::with_coefficients(const ProblemParams& params, const Grid& g,
                                                     const VectorField& A, const ScalarField& q) {
  params.validate();
  require(A.dim() == g.dim, "operator: A component count mismatch");
  require(q.grid == g, "operator: q grid mismatch");
  DiscreteOperator op;
  op.params = params;
  op.grid = g;
  op.has_coefficients = true;
  for (int j = 0; j < A.dim(); ++j) {
    require(A[j].grid == g, "operator: A grid mismatch");
    op.a_hat.push_back(fft_forward(A[j]));
    drop_nyquist_planes(op.a_hat.back());
  }
  op.q_hat = fft_forward(q);
  drop_nyquist_planes(op.q_hat);
  return op;
}

DiscreteOperator DiscreteOperator::conjugated(const std::array<cplx, 3>& zeta, double h,
                                              const std::array<double, 3>& lattice_shift) const {
  require(h > 0 && h <= 1, "operator: h must lie in (0, 1]");
  DiscreteOperator op = *this;
  op.conjugation.zeta = zeta;
  op.conjugation.h = h;
  op.conjugation.lattice_shift = lattice_shift;
  op.conjugation.active = true;
  if (has_coefficients) {
    // (A . zeta) assembled once in physical space.
    ScalarField az(grid);
    for (int j = 0; j < grid.dim; ++j) {
      ScalarField aj = fft_inverse(a_hat[j]);
      for (std::size_t i = 0; i < az.size(); ++i) az.v[i] += aj.v[i] * zeta[j];
    }
    op.a_dot_zeta_hat = fft_forward(az);
  }
  return op;
}

cplx DiscreteOperator::principal_symbol(const std::array<double, 3>& xi) const {
  if (!conjugation.active) {
    double xi2 = 0;
    for (int a = 0; a < grid.dim; ++a) xi2 += xi[a] * xi[a];
    return std::pow(xi2, params.m);
  }
  const double h = conjugation.h;
  double xi2 = 0;
  cplx zdotxi(0, 0);
  for (int a = 0; a < grid.dim; ++a) {
    double xs = xi[a] + conjugation.lattice_shift[a];
    xi2 += xs * xs;
    zdotxi += conjugation.zeta[a] * xs;
  }
  cplx base = h * h * xi2 + 2.0 * h * zdotxi + conjugation.zeta_dot_zeta();
  cplx acc(1, 0);
  for (int p = 0; p < params.m; ++p) acc *= base;
  return acc;
}

Spectrum apply_operator(const DiscreteOperator& op, const Spectrum& u) {
  require(u.grid == op.grid, "apply_operator: grid mismatch");
  Spectrum out = apply_multiplier(u, [&op](const std::array<double, 3>& xi) {
    return op.principal_symbol(xi);
  });
  if (!op.has_coefficients) return out;

  if (!op.conjugation.active) {
    for (int j = 0; j < op.grid.dim; ++j) {
      Spectrum adu = mul_dealiased_spec(op.a_hat[j], derivative_d(u, j));
      out += adu;
    }
    out += mul_dealiased_spec(op.q_hat, u);
    return out;
  }

  const double h = op.conjugation.h;
  const double h2m = std::pow(h, 2 * op.params.m);
  for (int j = 0; j < op.grid.dim; ++j) {
    // D_j on the shifted lattice multiplies by xi_j + w_j.
    Spectrum du = derivative_d(u, j);
    double wj = op.conjugation.lattice_shift[j];
    if (wj != 0)
      for (std::size_t i = 0; i < du.size(); ++i) du.c[i] += wj * u.c[i];
    Spectrum adu = mul_dealiased_spec(op.a_hat[j], du);
    adu *= cplx(h2m, 0);
    out += adu;
  }
  Spectrum az = mul_dealiased_spec(op.a_dot_zeta_hat, u);
  az *= cplx(h2m / h, 0);
  out += az;
  Spectrum qu = mul_dealiased_spec(op.q_hat, u);
  qu *= cplx(h2m, 0);
  out += qu;
  return out;
}

double min_resolvable_h(const Grid& g, const std::array<cplx, 3>& zeta) {
  double re2 = 0;
  for (int a = 0; a < g.dim; ++a) re2 += zeta[a].real() * zeta[a].real();
  double remax = std::sqrt(re2);
  // Two grid cells per oscillation: |zeta|/h <= pi / dx.
  return remax * g.spacing() / kPi;
}

std::array<double, 3> choose_lattice_shift(const Grid& g, const std::array<cplx, 3>& zeta,
                                           double h, double* floor_out) {
  // Half a step along Im(zeta) clears the characteristic set whenever that
  // direction is lattice-rational, which covers the canonical frames; the
  // remaining candidates are fixed fallbacks for oblique geometries.  The
  // winner is whichever keeps the worst grid mode farthest from zero, found
  // by brute force over all modes.
  std::array<double, 3> im{};
  double imn = 0;
  for (int a = 0; a < g.dim; ++a) {
    im[a] = zeta[a].imag();
    imn += im[a] * im[a];
  }
  imn = std::sqrt(imn);
  std::vector<std::array<double, 3>> candidates;
  if (imn > 0) candidates.push_back({0.5 * im[0] / imn, 0.5 * im[1] / imn, 0.5 * im[2] / imn});
  candidates.push_back({0.5, 0.0, 0.0});
  candidates.push_back({0.0, 0.5, 0.0});
  candidates.push_back({0.0, 0.0, 0.5});
  candidates.push_back({0.5, 0.5, 0.5});
  candidates.push_back({0.25, 0.37, 0.43});
  candidates.push_back({0.41, 0.23, 0.31});

  DiscreteOperator probe = DiscreteOperator::free_operator(ProblemParams{}, g);
  std::array<double, 3> best{};
  double best_floor = -1;
  for (const auto& w : candidates) {
    DiscreteOperator op = probe.conjugated(zeta, h, w);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) {
      double mag = std::abs(op.principal_symbol(g.freq(i)));
      if (mag < worst) worst = mag;
    }
    if (worst > best_floor) {
      best_floor = worst;
      best = w;
    }
  }
  if (floor_out) *floor_out = best_floor;
  return best;
}

}  // namespace pcgo
