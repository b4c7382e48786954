#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pcgo/field.hpp"
#include "pcgo/grid.hpp"

namespace pcgo {

// Admissibility data for the perturbed operator (-Delta)^m + A.D + q.
// The exponent tables below gate which (m, n, delta, p', r') combinations
// the coefficient classes accept.
struct ProblemParams {
  int m = 2;
  int n = 3;
  double delta = 0.25;
  double p_prime = 3.0;
  double r_prime = 4.0;

  // Throwing variant of the table checks, for constructors.
  void validate() const;
};

// Lower endpoints of the admissible exponent intervals, with open/closed
// flags. Exposed so tests and the admissibility report share one source.
struct ExponentClause {
  double lower = 0;
  bool open = false;  // true: exponent must exceed lower strictly
  bool holds(double value) const { return open ? value > lower : value >= lower; }
};

ExponentClause a_class_clause(int m, int n);
ExponentClause q_class_clause(int m, int n, double delta);

struct AdmissibilityReport {
  bool pass = true;
  double leak_ratio = 0.0;  // max |field| outside Omega over the global peak
  std::vector<std::string> violated;

  void fail(const std::string& clause) {
    pass = false;
    violated.push_back(clause);
  }
};

struct CoefficientSet {
  VectorField A;
  ScalarField q;
  double epsilon = 0.0;  // mollification width already applied to the fields
  std::string provenance = "bump";
  std::uint64_t seed = 0;
};

// Compactly supported smooth radial bump: a Gaussian profile of width sigma
// shut off hard at support_radius by the flat mollifier factor
// exp(1 - 1/(1 - (r/R)^2)). Throws if the support ball leaks outside Omega.
ScalarField make_bump_q(const Grid& g, const DomainSpec& dom, const std::array<double, 3>& center,
                        double sigma, double amplitude, double support_radius);

enum class AProfile { gradient, divergence_free, random_band };

struct VectorCoefficient {
  VectorField A;
  // Populated for the gradient profile: A = grad(g) spectrally.
  ScalarField potential;
  bool has_potential = false;
};

VectorCoefficient make_vector_A(const Grid& g, const DomainSpec& dom, AProfile profile,
                                double scale, std::uint64_t seed = 0);

// Gaussian Fourier damping exp(-eps^2 |xi|^2 / 2); eps = 0 is the identity.
Spectrum mollify(const Spectrum& s, double eps);
ScalarField mollify(const ScalarField& f, double eps);
VectorField mollify(const VectorField& a, double eps);

AdmissibilityReport check_admissibility(const CoefficientSet& set, const ProblemParams& params,
                                        const DomainSpec& dom);

// Fourier data with the analysis-side sign: value = integral of f e^{+i xi_k x}
// over the box, with xi_k the lattice frequency of integer vector k.
cplx hat_plus(const Spectrum& s, const std::array<int, 3>& k);

void write_coefficient_set(const std::string& dir, const CoefficientSet& set,
                           const ProblemParams& params);
CoefficientSet read_coefficient_set(const std::string& dir, const Grid& g);

}  // namespace pcgo
