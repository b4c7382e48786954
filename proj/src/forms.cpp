#include "pcgo/forms.hpp"

#include <cmath>

#include "pcgo/errors.hpp"
#include "pcgo/fourier.hpp"
#include "pcgo/random_fields.hpp"
#include "pcgo/sobolev.hpp"

namespace pcgo {

Spectrum conj_spectrum(const Spectrum& s) {
  ScalarField f = fft_inverse(s);
  for (auto& z : f.v) z = std::conj(z);
  return fft_forward(f);
}

cplx pair_noconj(const Spectrum& f, const Spectrum& g) {
  require(f.grid == g.grid, "pairing: grid mismatch");
  const Grid& gr = f.grid;
  const int n = gr.points;
  cplx acc(0, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto ix = gr.unflatten(i);
    // Reflect k -> -k in storage indices; the Nyquist row maps to itself.
    std::size_t flat = 0;
    for (int a = 0; a < gr.dim; ++a) {
      std::size_t r = ix[a] == 0 ? 0 : static_cast<std::size_t>(n) - ix[a];
      flat = flat * n + r;
    }
    acc += f.c[i] * g.c[flat];
  }
  return acc * gr.volume();
}

cplx bilinear_B_A(const VectorField& A, const Spectrum& u, const Spectrum& v) {
  require(A.dim() == u.grid.dim, "B_A: component count mismatch");
  ScalarField vf = fft_inverse(v);
  cplx acc(0, 0);
  for (int j = 0; j < A.dim(); ++j) {
    require(A[j].grid == u.grid && u.grid == v.grid, "B_A: grid mismatch");
    ScalarField du = fft_inverse(derivative_d(u, j));
    for (std::size_t i = 0; i < du.size(); ++i) acc += A[j].v[i] * vf.v[i] * du.v[i];
  }
  return acc * u.grid.cell_volume();
}

cplx bilinear_b_q(const ScalarField& q, const Spectrum& u, const Spectrum& v) {
  require(q.grid == u.grid && u.grid == v.grid, "b_q: grid mismatch");
  ScalarField uf = fft_inverse(u);
  ScalarField vf = fft_inverse(v);
  cplx acc(0, 0);
  for (std::size_t i = 0; i < uf.size(); ++i) acc += q.v[i] * uf.v[i] * vf.v[i];
  return acc * u.grid.cell_volume();
}

std::vector<std::array<int, 3>> multi_indices(int dim, int order) {
  std::vector<std::array<int, 3>> out;
  if (dim == 2) {
    for (int a0 = 0; a0 <= order; ++a0) out.push_back({a0, order - a0, 0});
  } else {
    for (int a0 = 0; a0 <= order; ++a0)
      for (int a1 = 0; a1 + a0 <= order; ++a1) out.push_back({a0, a1, order - a0 - a1});
  }
  return out;
}

double multinomial_weight(int order, const std::array<int, 3>& alpha) {
  double w = 1.0;
  int used = 0;
  for (int a = 0; a < 3; ++a) {
    for (int j = 1; j <= alpha[a]; ++j) {
      ++used;
      w *= static_cast<double>(used) / j;
    }
  }
  require(used == order, "multinomial: index order mismatch");
  return w;
}

cplx principal_pairing(const Spectrum& u, const Spectrum& v, int m) {
  require(u.grid == v.grid, "principal pairing: grid mismatch");
  require(m >= 1, "principal pairing: order must be positive");
  cplx acc(0, 0);
  for (const auto& alpha : multi_indices(u.grid.dim, m)) {
    Spectrum du = derivative_d_multi(u, alpha);
    Spectrum dv = derivative_d_multi(v, alpha);
    cplx dot(0, 0);
    for (std::size_t i = 0; i < du.size(); ++i) dot += du.c[i] * std::conj(dv.c[i]);
    acc += multinomial_weight(m, alpha) * dot * u.grid.volume();
  }
  return acc;
}

cplx sesquilinear_a(const VectorField& A, const ScalarField& q, const Spectrum& u,
                    const Spectrum& v, int m) {
  Spectrum vb = conj_spectrum(v);
  return principal_pairing(u, v, m) + bilinear_B_A(A, u, vb) + bilinear_b_q(q, u, vb);
}

ScalarField divergence_D(const VectorField& A) {
  require(A.dim() >= 2, "divergence: need a vector field");
  const Grid& g = A[0].grid;
  Spectrum acc(g);
  for (int j = 0; j < A.dim(); ++j) {
    Spectrum d = derivative_d(fft_forward(A[j]), j);
    for (std::size_t i = 0; i < acc.size(); ++i) acc.c[i] += d.c[i];
  }
  return fft_inverse(acc);
}

double adjoint_residual(const VectorField& A, const Spectrum& u, const Spectrum& v) {
  cplx buv = bilinear_B_A(A, u, v);
  cplx bvu = bilinear_B_A(A, v, u);
  cplx bdiv = bilinear_b_q(divergence_D(A), u, v);
  double scale = std::max({std::abs(buv), std::abs(bvu), std::abs(bdiv)});
  if (scale == 0) return 0;
  return std::abs(buv + bvu + bdiv) / scale;
}

BoundednessReport boundedness_probe(const VectorField& A, const ScalarField& q,
                                    const ProblemParams& params, int n_samples,
                                    std::uint64_t seed) {
  const Grid& g = q.grid;
  BoundednessReport rep;
  double na2 = 0;
  SobolevIndex ia{-0.5 * params.m + 1.0, params.p_prime, 1.0};
  for (int j = 0; j < A.dim(); ++j) {
    double nj = sobolev_norm(fft_forward(A[j]), ia);
    na2 += nj * nj;
  }
  rep.norm_A = std::sqrt(na2);
  SobolevIndex iq{-0.5 * params.m + params.delta, params.r_prime, 1.0};
  rep.norm_q = sobolev_norm(fft_forward(q), iq);

  SobolevIndex ih{0.5 * params.m, 2.0, 1.0};
  std::mt19937_64 rng(seed);
  int band = std::min(6, g.points / 2 - 1);
  for (int s = 0; s < n_samples; ++s) {
    Spectrum u = random_band_spectrum(g, band, rng);
    Spectrum v = random_band_spectrum(g, band, rng);
    double nu = sobolev_norm(u, ih), nv = sobolev_norm(v, ih);
    if (nu == 0 || nv == 0) continue;
    if (rep.norm_A > 0)
      rep.c_A = std::max(rep.c_A, std::abs(bilinear_B_A(A, u, v)) / (rep.norm_A * nu * nv));
    if (rep.norm_q > 0)
      rep.c_q = std::max(rep.c_q, std::abs(bilinear_b_q(q, u, v)) / (rep.norm_q * nu * nv));
  }
  return rep;
}

}  // namespace pcgo
