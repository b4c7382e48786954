#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pcgo/coefficients.hpp"
#include "pcgo/field.hpp"

namespace pcgo {

// Complex conjugate of the field, as a spectrum operation.
Spectrum conj_spectrum(const Spectrum& s);

// Integral of f*g over the box (no conjugation), evaluated as the exact
// convolution pairing L^n sum f_hat(k) g_hat(-k).
cplx pair_noconj(const Spectrum& f, const Spectrum& g);

// B_A(u, v) = sum_j integral A_j v D_j u, with D = -i grad. Quadrature is the
// plain lattice sum of the pointwise triple product, so the value depends on
// u and v only through their samples where A is nonzero. Aliasing error is
// bounded by the top-band spectral mass of A; resolved coefficients keep it
// at rounding level.
cplx bilinear_B_A(const VectorField& A, const Spectrum& u, const Spectrum& v);

// b_q(u, v) = integral q u v, same lattice quadrature.
cplx bilinear_b_q(const ScalarField& q, const Spectrum& u, const Spectrum& v);

// Multi-index tools for the leading polyharmonic term.
std::vector<std::array<int, 3>> multi_indices(int dim, int order);
double multinomial_weight(int order, const std::array<int, 3>& alpha);

// sum_{|alpha| = m} (m!/alpha!) integral D^alpha u conj(D^alpha v).
cplx principal_pairing(const Spectrum& u, const Spectrum& v, int m);

// a(u, v) = principal term + B_A(u, conj v) + b_q(u, conj v).
cplx sesquilinear_a(const VectorField& A, const ScalarField& q, const Spectrum& u,
                    const Spectrum& v, int m);

// D . A = sum_j D_j A_j (purely imaginary for real A).
ScalarField divergence_D(const VectorField& A);

// |B_A(u,v) + B_A(v,u) + b_{D.A}(u,v)| relative to the largest term.
double adjoint_residual(const VectorField& A, const Spectrum& u, const Spectrum& v);

struct BoundednessReport {
  double c_A = 0;  // max |B_A(u,v)| / (||A|| ||u|| ||v||) over the samples
  double c_q = 0;
  double norm_A = 0;
  double norm_q = 0;
};

BoundednessReport boundedness_probe(const VectorField& A, const ScalarField& q,
                                    const ProblemParams& params, int n_samples,
                                    std::uint64_t seed);

}  // namespace pcgo
