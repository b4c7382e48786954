#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace pcgo {

using KrylovVec = std::vector<std::complex<double>>;
// y = A x resp. z = M^{-1} r; the callee may not alias input and output.
using KrylovApply = std::function<void(const KrylovVec&, KrylovVec&)>;

struct KrylovStats {
  int iterations = 0;
  double rel_residual = 0;
  bool converged = false;
};

// Preconditioned conjugate gradients for Hermitian positive definite apply.
// x holds the initial guess on entry and the solution on exit; convergence
// is ||b - A x|| <= tol ||b|| in the plain euclidean norm.
KrylovStats pcg_hermitian(const KrylovApply& apply, const KrylovApply& precond,
                          const KrylovVec& rhs, KrylovVec& x, double tol,
                          int max_iterations);

// Restarted GMRES with right preconditioning: solves A M^{-1} y = b and
// returns x = M^{-1} y.  Pass an empty precond for the identity.
KrylovStats gmres_right(const KrylovApply& apply, const KrylovApply& precond,
                        const KrylovVec& rhs, KrylovVec& x, double tol,
                        int max_iterations, int restart);

}  // namespace pcgo
