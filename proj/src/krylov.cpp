#include "pcgo/krylov.hpp"

#include <cmath>
#include <stdexcept>

namespace pcgo {

namespace {

using cplx = std::complex<double>;

cplx dot(const KrylovVec& a, const KrylovVec& b) {
  cplx s(0, 0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

double norm(const KrylovVec& a) { return std::sqrt(std::abs(dot(a, a))); }

void axpy(cplx alpha, const KrylovVec& x, KrylovVec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

KrylovStats pcg_hermitian(const KrylovApply& apply, const KrylovApply& precond,
                          const KrylovVec& rhs, KrylovVec& x, double tol,
                          int max_iterations) {
  const std::size_t n = rhs.size();
  if (x.size() != n) x.assign(n, cplx(0, 0));
  KrylovStats stats;

  double bnorm = norm(rhs);
  if (bnorm == 0) {
    x.assign(n, cplx(0, 0));
    stats.converged = true;
    return stats;
  }

  KrylovVec r(n), z(n), p(n), ap(n);
  apply(x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];

  auto apply_precond = [&](const KrylovVec& in, KrylovVec& out) {
    if (precond)
      precond(in, out);
    else
      out = in;
  };

  apply_precond(r, z);
  p = z;
  cplx rz = dot(r, z);

  for (int it = 0; it < max_iterations; ++it) {
    stats.rel_residual = norm(r) / bnorm;
    if (stats.rel_residual <= tol) {
      stats.converged = true;
      return stats;
    }
    apply(p, ap);
    cplx pap = dot(ap, p);
    if (std::real(pap) <= 0)
      throw std::runtime_error("pcg: operator lost positive definiteness");
    cplx alpha = rz / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    apply_precond(r, z);
    cplx rz_next = dot(r, z);
    cplx beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    stats.iterations = it + 1;
  }
  stats.rel_residual = norm(r) / bnorm;
  stats.converged = stats.rel_residual <= tol;
  return stats;
}

KrylovStats gmres_right(const KrylovApply& apply, const KrylovApply& precond,
                        const KrylovVec& rhs, KrylovVec& x, double tol,
                        int max_iterations, int restart) {
  const std::size_t n = rhs.size();
  if (x.size() != n) x.assign(n, cplx(0, 0));
  KrylovStats stats;

  double bnorm = norm(rhs);
  if (bnorm == 0) {
    x.assign(n, cplx(0, 0));
    stats.converged = true;
    return stats;
  }

  auto apply_right = [&](const KrylovVec& in, KrylovVec& out) {
    if (precond) {
      KrylovVec tmp(n);
      precond(in, tmp);
      apply(tmp, out);
    } else {
      apply(in, out);
    }
  };

  KrylovVec r(n), w(n);
  int total_it = 0;

  while (total_it < max_iterations) {
    apply(x, w);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - w[i];
    double rnorm = norm(r);
    stats.rel_residual = rnorm / bnorm;
    if (stats.rel_residual <= tol) {
      stats.converged = true;
      return stats;
    }

    int m = restart;
    std::vector<KrylovVec> V;
    V.reserve(m + 1);
    V.push_back(r);
    for (auto& c : V[0]) c /= rnorm;

    // Hessenberg column storage plus Givens rotations for the running QR.
    std::vector<std::vector<cplx>> H;
    std::vector<cplx> cs(m), sn(m), g(m + 1, cplx(0, 0));
    g[0] = rnorm;
    int k = 0;

    for (; k < m && total_it < max_iterations; ++k, ++total_it) {
      apply_right(V[k], w);
      std::vector<cplx> h(k + 2, cplx(0, 0));
      for (int i = 0; i <= k; ++i) {
        h[i] = dot(w, V[i]);
        axpy(-h[i], V[i], w);
      }
      // one re-orthogonalization pass keeps the basis usable near round-off
      for (int i = 0; i <= k; ++i) {
        cplx corr = dot(w, V[i]);
        h[i] += corr;
        axpy(-corr, V[i], w);
      }
      double wnorm = norm(w);
      h[k + 1] = wnorm;
      for (int i = 0; i < k; ++i) {
        cplx t = std::conj(cs[i]) * h[i] + std::conj(sn[i]) * h[i + 1];
        h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
        h[i] = t;
      }
      double denom = std::sqrt(std::norm(h[k]) + std::norm(h[k + 1]));
      if (denom == 0) {
        cs[k] = 1;
        sn[k] = 0;
      } else {
        cs[k] = h[k] / denom;
        sn[k] = h[k + 1] / denom;
      }
      h[k] = std::conj(cs[k]) * h[k] + std::conj(sn[k]) * h[k + 1];
      h[k + 1] = 0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = std::conj(cs[k]) * g[k];
      H.push_back(std::move(h));

      stats.iterations = total_it + 1;
      stats.rel_residual = std::abs(g[k + 1]) / bnorm;
      if (stats.rel_residual <= tol || wnorm == 0) {
        ++k;
        ++total_it;
        break;
      }
      KrylovVec v_next = w;
      for (auto& c : v_next) c /= wnorm;
      V.push_back(std::move(v_next));
    }

    // back substitution on the k x k triangular block
    std::vector<cplx> y(k, cplx(0, 0));
    for (int i = k - 1; i >= 0; --i) {
      cplx s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H[j][i] * y[j];
      y[i] = s / H[i][i];
    }
    KrylovVec update(n, cplx(0, 0));
    for (int j = 0; j < k; ++j) axpy(y[j], V[j], update);
    if (precond) {
      KrylovVec tmp(n);
      precond(update, tmp);
      axpy(cplx(1, 0), tmp, x);
    } else {
      axpy(cplx(1, 0), update, x);
    }

    if (stats.rel_residual <= tol) {
      stats.converged = true;
      return stats;
    }
    if (k == 0) break;
  }
  return stats;
}

}  // namespace pcgo
