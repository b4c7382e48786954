#pragma once

#include <array>
#include <functional>

#include "pcgo/field.hpp"

namespace pcgo {

// ---------------------------------------------------------------------------
// Transforms.  Forward returns unit-coefficient pure modes (1/N^n scaling);
// inverse is the plain synthesis sum, so the pair is mutually inverse and
// Parseval holds with the box volume factor carried by Spectrum::l2().
// Plans are cached per (dim, points, direction) behind a mutex; execution on
// distinct buffers is safe to run concurrently.
// ---------------------------------------------------------------------------
Spectrum fft_forward(const ScalarField& f);
ScalarField fft_inverse(const Spectrum& s);

// Multiplier acting in frequency: c_k *= m(xi_k).
using Multiplier = std::function<cplx(const std::array<double, 3>&)>;
Spectrum apply_multiplier(const Spectrum& s, const Multiplier& m);
void apply_multiplier_inplace(Spectrum& s, const Multiplier& m);

// D_a = -i d/dx_a acts as the real multiplier xi_a.
Spectrum derivative_d(const Spectrum& s, int axis);
// Multi-index D^alpha (per-axis orders), multiplier prod xi_a^alpha_a.
Spectrum derivative_d_multi(const Spectrum& s, const std::array<int, 3>& alpha);

// Copy coefficients by signed frequency into a finer/coarser lattice.
Spectrum pad_spectrum(const Spectrum& s, int new_points);
Spectrum truncate_spectrum(const Spectrum& s, int new_points);

// Band-limited pointwise product via zero padding by 3/2 (alias-free for the
// retained band).
ScalarField mul_dealiased(const ScalarField& a, const ScalarField& b);
Spectrum mul_dealiased_spec(const Spectrum& a, const Spectrum& b);

// Integrals of products evaluated on a 2x refined lattice, exact for three
// factors of band <= N/2 each: returns sum a*b (dV) resp. sum a*b*c (dV).
// No conjugation is applied; callers conjugate explicitly where needed.
cplx integrate_product(const Spectrum& a, const Spectrum& b);
cplx integrate_product3(const Spectrum& a, const Spectrum& b, const Spectrum& c);

// Lattice quadrature of f against conj(g) without refinement.
cplx inner_lattice(const ScalarField& f, const ScalarField& g);

// C^2 radial taper: 1 on r <= r_inner, 0 on r >= r_outer (quintic smoothstep
// in between), centered at the box origin.
ScalarField radial_mask(const Grid& g, double r_inner, double r_outer);
// C^6 variant (degree-13 smoothstep).  Use this wherever the masked field is
// fed through (-Delta)^m or interpolated off-lattice: the quintic taper's
// third derivative jumps, which rings at O(1) under fourth derivatives.
ScalarField radial_mask_c6(const Grid& g, double r_inner, double r_outer);
// Sharp indicator of the centered ball (diagnostics only).
ScalarField ball_indicator(const Grid& g, double radius);

// Pure lattice mode e^{i xi.x} for integer frequency index k (per axis).
ScalarField lattice_mode(const Grid& g, const std::array<int, 3>& k);

// Evaluate a spectrum at arbitrary points (axis-contracted synthesis,
// cost O(N^dim + N^(dim-1) * #points)).
std::vector<cplx> eval_at_points(const Spectrum& s,
                                 const std::vector<std::array<double, 3>>& pts);

// Fraction of |c_k|^2 carried by frequencies with max-norm index above
// points/3 (used to decide whether a product can be formed without padding).
double high_band_energy_fraction(const Spectrum& s);

}  // namespace pcgo
