#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcgo/boundary.hpp"
#include "pcgo/operators.hpp"
#include "pcgo/solver.hpp"

namespace pcgo {

// Basis of Dirichlet data on a sphere: masked solid-harmonic fields together
// with their own band-limited traces.  Using the measured traces (rather than
// the analytic falling-factorial ladder) keeps the basis data exactly
// attainable by lattice fields, so free solves reproduce the generator field
// itself instead of chasing the cutoff's interpolation error.
struct BoundaryBasis {
  BoundaryMesh mesh;
  int m = 0;
  int lmax = 0;
  std::vector<BasisGenerator> generators;  // fields; .trace keeps the analytic ladder
  std::vector<TraceStack> data;            // measured traces, the actual basis elements
  double gram_condition = 0;               // of the mesh Gram of `data`

  int K() const { return static_cast<int>(data.size()); }
};

BoundaryBasis make_boundary_basis(const Grid& g, const DomainSpec& dom, const BoundaryMesh& mesh,
                                  int lmax, int m);

// Quadrature weights for integrals over the ball r <= radius: cut-cell
// fractions times the cell volume.  They vanish identically outside the
// ball, so the huge derivative spikes in the basis fields' cutoff tails
// never leak into the pairing (a band-limited indicator rings there and
// picks them up at O(1)); integrands supported strictly inside are summed
// with plain lattice weights, i.e. to spectral accuracy.  The price is an
// O(h^2) error in the boundary shell, which is common to every matrix
// assembled on the same grid and cancels from comparisons and differences.
ScalarField ball_quadrature(const Grid& g, double radius);

// The weak Dirichlet-to-Neumann pairing sum_{|a|=m} (m!/a!) int_B D^a u
// conj(D^a v) + B_A(u, conj v) + b_q(u, conj v).  The principal term is
// restricted to the ball through `ball` weights; the coefficient terms use
// plain lattice sums, exact because A and q are supported inside the ball.
cplx weak_dtn_pairing(const VectorField& A, const ScalarField& q, int m, const Spectrum& u,
                      const Spectrum& v, const ScalarField& ball);

struct DtnMatrix {
  int K = 0;
  std::vector<cplx> entries;  // row-major, entries[i * K + j] = <N f_j, conj h_i>

  // provenance
  int grid_points = 0;
  int mesh_count = 0;
  double radius = 0;
  int lmax = 0;
  int m = 0;
  double tau_trace = 0;
  std::string coefficients;  // free-text description of (A, q)

  cplx at(int i, int j) const { return entries[static_cast<std::size_t>(i) * K + j]; }
};

struct AssembleStats {
  double worst_mismatch = 0;
  double worst_interior = 0;
  int worst_iterations = 0;
  double wall_ms = 0;
};

// One Dirichlet solve per column, then the weak pairing against every basis
// field as the extension.  Coefficients must be supported inside the basis
// sphere.  Deterministic: no randomness enters, so reassembly is bitwise
// reproducible.
DtnMatrix assemble_dtn(const ProblemParams& params, const Grid& g, const VectorField& A,
                       const ScalarField& q, const BoundaryBasis& basis,
                       const SolverOptions& opts, AssembleStats* stats = nullptr);

DtnMatrix dtn_difference(const DtnMatrix& two, const DtnMatrix& one);

// h-vector dagger . M . f-vector.
cplx dtn_pair(const DtnMatrix& M, const std::vector<cplx>& f_coefficients,
              const std::vector<cplx>& h_coefficients);

// Least-squares coefficients of trace data in the basis, over the weighted
// mesh samples of all m orders.
std::vector<cplx> project_traces(const BoundaryBasis& basis, const TraceStack& stack);

void write_dtn(const std::string& path, const DtnMatrix& M);
DtnMatrix read_dtn(const std::string& path);

}  // namespace pcgo
