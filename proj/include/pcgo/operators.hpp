#pragma once

#include <array>

#include "pcgo/coefficients.hpp"
#include "pcgo/fourier.hpp"

namespace pcgo {

// Exponential conjugation data for the semiclassical operator
// e^{-i x.zeta/h} h^{2m} L e^{i x.zeta/h}.
//
// The conjugated symbol vanishes at xi = 0 whenever zeta.zeta = 0, and for
// unlucky (zeta, h) whole circles of integer modes sit on its zero set, so
// the remainder equation has no periodic solution.  The classical cure is to
// seek the remainder as e^{i x.w} times a periodic field for a fixed real
// offset w: every multiplier is then evaluated at xi + w, and w is chosen so
// the shifted lattice keeps clear of the characteristic set.  lattice_shift
// stores that w; zero means plain periodic.
struct Conjugation {
  std::array<cplx, 3> zeta{cplx(0, 0), cplx(0, 0), cplx(0, 0)};
  double h = 1;
  std::array<double, 3> lattice_shift{0, 0, 0};
  bool active = false;

  cplx zeta_dot_zeta() const {
    return zeta[0] * zeta[0] + zeta[1] * zeta[1] + zeta[2] * zeta[2];
  }
};

// The operator (-Delta)^m + A.D + q on the periodic box, optionally in its
// conjugated semiclassical form.  Coefficient spectra are precomputed once;
// the struct is immutable after construction and cheap to copy.
struct DiscreteOperator {
  ProblemParams params;
  Grid grid;
  double tau = 1e6;  // boundary penalty strength used by the solvers
  bool has_coefficients = false;
  std::vector<Spectrum> a_hat;  // dim components, empty when free
  Spectrum q_hat;
  Spectrum a_dot_zeta_hat;  // assembled on demand for conjugated operators
  Conjugation conjugation;

  static DiscreteOperator free_operator(const ProblemParams& params, const Grid& g);
  static DiscreteOperator with_coefficients(const ProblemParams& params, const Grid& g,
                                            const VectorField& A, const ScalarField& q);

  // Copy of this operator with conjugation attached.
  DiscreteOperator conjugated(const std::array<cplx, 3>& zeta, double h,
                              const std::array<double, 3>& lattice_shift = {0, 0, 0}) const;

  // Principal symbol at one frequency: |xi|^{2m}, or the conjugated
  // (h^2|xi|^2 + 2h zeta.xi + zeta.zeta)^m.  A conjugated operator with a
  // lattice shift evaluates at xi + shift, the frequency its coefficient
  // arrays actually represent.
  cplx principal_symbol(const std::array<double, 3>& xi) const;
};

// L u (or the conjugated expansion) as a spectrum.  Coefficient products are
// dealiased; the principal part is a pure multiplier.
Spectrum apply_operator(const DiscreteOperator& op, const Spectrum& u);

// Smallest grid-resolvable h for a phase e^{i x.zeta/h}: two cells per
// oscillation of the largest frequency component |Re zeta|/h.
double min_resolvable_h(const Grid& g, const std::array<cplx, 3>& zeta);

// Offset keeping the shifted lattice away from the characteristic set of the
// conjugated symbol: tries a fixed candidate list and returns the shift whose
// worst grid mode has the largest |symbol|.  floor_out, when given, receives
// that worst value so callers can reject a hopeless geometry.
std::array<double, 3> choose_lattice_shift(const Grid& g, const std::array<cplx, 3>& zeta,
                                           double h, double* floor_out = nullptr);

}  // namespace pcgo
