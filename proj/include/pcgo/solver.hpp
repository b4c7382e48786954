#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pcgo/boundary.hpp"
#include "pcgo/operators.hpp"

namespace pcgo {

// Knobs for the penalized least-squares Dirichlet solver.  The objective is
//
//   J(u) = || L u - F ||^2_{L^2(box)}  +  tau_trace || gamma u - f ||^2_mesh
//        +  tau_exterior || u ||^2_{L^2(r > ext_radius)}.
//
// tau_trace carries the boundary condition and is stiff by design.  The
// exterior term only removes the ambiguity of the continuation past the ball
// of radius ext_radius, so its weight stays O(1): any positive value selects
// the decaying representative, while a stiff value would bury the interior
// physics under the penalty and stall the Krylov iteration.
struct SolverOptions {
  double tau_trace = 1e6;
  double tau_exterior = 1.0;
  double ext_radius = 2.0;
  double tol = 1e-10;
  int max_iterations = 5000;
  bool verbose = false;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double rel_residual = 0;      // Krylov residual of the normal equations
  double pde_term = 0;          // objective pieces at the returned solution
  double trace_term = 0;
  double exterior_term = 0;
  double trace_mismatch = 0;    // ||gamma u - f|| / ||f||, mesh-weighted
  double interior_residual = 0; // ||L u - F|| / scale over the trace ball
  double norm_ratio = 0;        // conjugated solves: h^m ||u||_{m/2} / ||rhs||_{-m/2}
  double h = 0;
  double wall_ms = 0;
  std::string kind;
};

// Boundary-trace evaluation E u = gamma u on a fixed mesh together with its
// exact adjoint E* on the coefficient lattice.  The adjoint spreads
// mesh values back as conj((i nu.k)^j e^{i k.x_b}) sums, contracted per axis
// so no N^3-by-mesh matrix is ever formed.
class TraceCoupling {
 public:
  TraceCoupling(const Grid& g, const BoundaryMesh& mesh, int m);

  TraceStack evaluate(const Spectrum& u) const;
  Spectrum adjoint(const TraceStack& mu) const;

  // Gram matrix sum_k w(k) phi_r(k) conj(phi_c(k)) of the trace functionals
  // phi_{j,b}(k) = (i nu_b.xi_k)^j e^{i k.x_b}, rows/cols flattened j*P + b.
  // Row-major (mP)^2 storage.  This is what the solver's Woodbury
  // preconditioner needs to invert the trace penalty block exactly.
  std::vector<cplx> weighted_gram(const std::vector<double>& w) const;

  const BoundaryMesh& mesh() const { return mesh_; }
  int orders() const { return m_; }

 private:
  Grid grid_;
  BoundaryMesh mesh_;
  int m_;
  // conj phase tables per axis, point-major: phases_[a][b * N + idx]
  std::array<std::vector<cplx>, 3> phases_;
};

// Minimize J above.  F is the inhomogeneity in physical space (nullptr for
// the homogeneous equation); f supplies the trace data and its mesh fixes
// the sphere.  background, when given, is a field whose data is subtracted
// before the solve and added back after, so the Krylov iteration only works
// on the correction.
Spectrum solve_least_squares(const DiscreteOperator& op, const ScalarField* F,
                             const TraceStack& f, const SolverOptions& opts,
                             SolveReport* report = nullptr,
                             const Spectrum* background = nullptr);

Spectrum solve_dirichlet(const DiscreteOperator& op, const TraceStack& f,
                         const SolverOptions& opts, SolveReport* report = nullptr);

Spectrum solve_inhomogeneous(const DiscreteOperator& op, const ScalarField& F,
                             const BoundaryMesh& mesh, const SolverOptions& opts,
                             SolveReport* report = nullptr);

// Periodic-box solve of the conjugated operator, right-preconditioned by the
// regularized inverse symbol.  Requires op.conjugation.active and h above the
// grid's resolvable floor.  The report records the semiclassical norm ratio
// h^m ||u||_{H^{m/2}_scl} / ||rhs||_{H^{-m/2}_scl}.
Spectrum solve_conjugated(const DiscreteOperator& op, const Spectrum& rhs,
                          const SolverOptions& opts, SolveReport* report = nullptr);

// Adjoint of apply_operator for the unconjugated operator:
// (-Delta)^m v + sum_j D_j(conj(A_j) v) + conj(q) v.
Spectrum apply_operator_adjoint(const DiscreteOperator& op, const Spectrum& u);

// Empirical Garding constants: least-squares fit of
// Re a(u,u) = C ||u||_{H^m}^2 - C0 ||u||_{L^2}^2 over random masked fields,
// plus the worst signed margin of the fitted inequality.
struct CoercivityEstimate {
  double C = 0;
  double C0 = 0;
  double worst_margin = 0;
  int samples = 0;
};

CoercivityEstimate coercivity_probe(const VectorField& A, const ScalarField& q,
                                    const ProblemParams& params, const Grid& g,
                                    const DomainSpec& dom, int n_samples,
                                    std::uint64_t seed);

// JSON-lines experiment log; empty path disables logging.
void set_experiment_log(const std::string& path);
void append_experiment_log(const std::string& json_line);

}  // namespace pcgo
