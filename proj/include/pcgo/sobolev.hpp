#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "pcgo/fourier.hpp"

namespace pcgo {

// Fractional and semiclassical Sobolev machinery.  Norms are built from the
// Bessel multiplier <h xi>^s = (1 + h^2|xi|^2)^(s/2) applied in frequency,
// followed by L^p lattice quadrature (p = 2 collapses to Parseval).

struct SobolevIndex {
  double s = 0;
  double p = 2;
  double h = 1;

  void validate() const;
};

Spectrum bessel_potential(const Spectrum& f, double s, double h);

// ||<h xi>^s f||_{L^2} with the box volume factor.
double semiclassical_norm(const Spectrum& f, double s, double h);

// L^p norm by quadrature on the 2x refined lattice.
double lp_norm(const Spectrum& f, double p);

double sobolev_norm(const Spectrum& f, const SobolevIndex& idx);

// Ratio |<f, psi>_{L^2}| / ||psi||_{H^s_scl} for one test function; the dual
// norm is the sup of this quantity over all psi.
double dual_ratio(const Spectrum& f, const Spectrum& psi, double s, double h);

// Reproducible dictionary of masked band-limited test functions used to
// estimate dual norms from below.  Elements are psi_i = mask * b_i with b_i
// band-limited Gaussian draws; pairings against f reduce to band-box dot
// products with mask * f, so the dictionary stores only band coefficients.
class DualDictionary {
 public:
  DualDictionary(const Grid& g, int band, double r_inner, double r_outer, int count,
                 std::uint64_t seed);

  // sup over elements of |<f, psi_i>| / ||psi_i||_{H^s_scl}; a lower bound
  // of the true dual norm ||f||_{H^{-s}_scl}.
  double estimate(const Spectrum& f, double s, double h) const;

  int size() const { return count_; }
  const Grid& grid() const { return grid_; }

  // Full field of one element (synthesized on demand, mainly for tests).
  Spectrum element(int i) const;

 private:
  std::vector<double> element_norms(double s, double h) const;

  Grid grid_;
  int band_ = 0;
  int count_ = 0;
  ScalarField mask_;
  std::vector<std::size_t> band_flat_;          // storage indices of the band box
  std::vector<std::vector<cplx>> packed_;       // per element, band-box coefficients
  mutable std::map<std::pair<double, double>, std::vector<double>> norm_cache_;
  mutable std::mutex mu_;
};

// Index case of the Sobolev multiplication inequality
// ||uv||_{W^{s1,p}} <= C ||u||_{W^{s1,p1}} ||v||_{W^{s2,p2}}.
struct MultiplicationCase {
  double s1, s2, p1, p2, p;
  int n = 3;

  // Derived classification of condition (b).
  bool equality_branch = false;
  bool admissible = false;
  double slack = 0;  // lhs - rhs of condition (b); negative means strict

  static MultiplicationCase make(double s1, double s2, double p1, double p2, double p, int n);
};

struct MultProbeReport {
  double c_hat = 0;                 // max ratio over all samples and grids
  int violations = 0;               // growth > 1.5x per grid refinement
  std::vector<double> c_per_grid;   // max ratio per grid size
  bool equality_branch = false;
  double slack = 0;
};

// Sample masked band-limited pairs, transplant them across the given grid
// sizes, and track the inequality ratio.
MultProbeReport multiplication_probe(const MultiplicationCase& mc,
                                     const std::vector<int>& grid_sizes, double box_length,
                                     double mask_inner, double mask_outer, int n_samples,
                                     std::uint64_t seed);

}  // namespace pcgo
