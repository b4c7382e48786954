#include "pcgo/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

#include <json.hpp>

#include "pcgo/forms.hpp"
#include "pcgo/krylov.hpp"
#include "pcgo/random_fields.hpp"
#include "pcgo/sobolev.hpp"

namespace pcgo {

namespace {

using EMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

std::mutex g_log_mutex;
std::string g_log_path;

// Adjoint of fft_inverse (plain conjugate-transpose synthesis).
Spectrum analysis_adjoint(const ScalarField& f) {
  Spectrum s = fft_forward(f);
  cplx scale(static_cast<double>(f.grid.size()), 0);
  s *= scale;
  return s;
}

Spectrum reflect_conj(const Spectrum& s) {
  const Grid& g = s.grid;
  Spectrum out(g);
  const int n = g.points;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto ix = g.unflatten(i);
    std::size_t j = 0;
    for (int a = 0; a < g.dim; ++a) j = j * n + static_cast<std::size_t>((n - ix[a]) % n);
    out.c[j] = std::conj(s.c[i]);
  }
  return out;
}

struct AdjointCoefficients {
  bool has = false;
  std::vector<Spectrum> a_conj;
  Spectrum q_conj;
};

AdjointCoefficients build_adjoint_coefficients(const DiscreteOperator& op) {
  AdjointCoefficients adj;
  adj.has = op.has_coefficients;
  if (!adj.has) return adj;
  adj.a_conj.reserve(op.a_hat.size());
  for (const auto& a : op.a_hat) adj.a_conj.push_back(reflect_conj(a));
  adj.q_conj = reflect_conj(op.q_hat);
  return adj;
}

Spectrum apply_adjoint_with(const DiscreteOperator& op, const AdjointCoefficients& adj,
                            const Spectrum& u) {
  const int m2 = 2 * op.params.m;
  Spectrum out = apply_multiplier(u, [m2](const std::array<double, 3>& xi) {
    double q2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    return cplx(std::pow(q2, m2 / 2.0), 0);
  });
  if (adj.has) {
    for (int a = 0; a < static_cast<int>(adj.a_conj.size()); ++a)
      out += derivative_d(mul_dealiased_spec(adj.a_conj[a], u), a);
    out += mul_dealiased_spec(adj.q_conj, u);
  }
  return out;
}

// tau_ext * dV outside the ball r <= onset, cut-cell smoothed at the ball
// surface.  Never differentiated, only used as a quadrature weight.  The
// onset keeps half a unit of corridor past the trace sphere, so data given
// on the outer ball's own boundary still has room for the continuation to
// bend toward zero without that curvature polluting the traces.
std::vector<double> exterior_weights(const Grid& g, const SolverOptions& opts,
                                     double trace_radius, double* sum_out) {
  double onset = std::max(opts.ext_radius, trace_radius + 0.5);
  require(onset <= 0.5 * g.length - 0.3,
          "solver: exterior-penalty onset leaves no room inside the box");
  std::vector<double> inside = omega_weights(g, onset);
  double dv = g.cell_volume();
  double sum = 0;
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    w[i] = opts.tau_exterior * dv * (1.0 - inside[i]);
    sum += w[i];
  }
  if (sum_out) *sum_out = sum;
  return w;
}

// The preconditioner is the exact inverse of
//   M = diag(V |xi|^{4m} + W_ext)  +  tau_w E* E
// via the Woodbury identity on the rank-mP trace block; the capacitance
// K = I/tau_w + E diag^{-1} E* is assembled once per (grid, mesh, weights)
// and kept in a small cache, since every column of a DtN assembly hits the
// same K.
struct TracePreconditioner {
  std::vector<double> dinv;
  std::shared_ptr<Eigen::LLT<Eigen::MatrixXcd>> llt;
  const TraceCoupling* coupling = nullptr;
  const Grid* grid = nullptr;

  void apply(const KrylovVec& r, KrylovVec& out) const {
    Spectrum t(*grid);
    for (std::size_t i = 0; i < r.size(); ++i) t.c[i] = r[i] * dinv[i];

    TraceStack s = coupling->evaluate(t);
    int P = coupling->mesh().count();
    int mp = coupling->orders() * P;
    EVec rhs(mp);
    for (int j = 0; j < coupling->orders(); ++j)
      for (int b = 0; b < P; ++b) rhs(j * P + b) = s.f[j][b];
    EVec c = llt->solve(rhs);

    TraceStack cs = zero_traces(coupling->mesh(), coupling->orders());
    for (int j = 0; j < coupling->orders(); ++j)
      for (int b = 0; b < P; ++b) cs.f[j][b] = c(j * P + b);
    Spectrum spread = coupling->adjoint(cs);

    out.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      out[i] = t.c[i] - dinv[i] * spread.c[i];
  }
};

std::mutex g_cap_mutex;
std::map<std::array<std::uint64_t, 6>, std::shared_ptr<Eigen::LLT<Eigen::MatrixXcd>>>
    g_cap_cache;

std::uint64_t dbits(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return u;
}

void log_report(const SolveReport& r, const Grid& g) {
  if (g_log_path.empty()) return;
  nlohmann::json j;
  j["kind"] = r.kind;
  j["points"] = g.points;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["rel_residual"] = r.rel_residual;
  j["pde_term"] = r.pde_term;
  j["trace_term"] = r.trace_term;
  j["exterior_term"] = r.exterior_term;
  j["trace_mismatch"] = r.trace_mismatch;
  j["interior_residual"] = r.interior_residual;
  if (r.norm_ratio > 0) j["norm_ratio"] = r.norm_ratio;
  if (r.h > 0) j["h"] = r.h;
  j["wall_ms"] = r.wall_ms;
  append_experiment_log(j.dump());
}

}  // namespace

void set_experiment_log(const std::string& path) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  g_log_path = path;
}

void append_experiment_log(const std::string& json_line) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  if (g_log_path.empty()) return;
  std::ofstream out(g_log_path, std::ios::app);
  out << json_line << "\n";
}

TraceCoupling::TraceCoupling(const Grid& g, const BoundaryMesh& mesh, int m)
    : grid_(g), mesh_(mesh), m_(m) {
  require(g.dim == 3, "trace coupling: boundary meshes are spheres, grid must be 3-d");
  const int n = g.points;
  const int P = mesh.count();
  for (int a = 0; a < 3; ++a) {
    phases_[a].resize(static_cast<std::size_t>(P) * n);
    for (int b = 0; b < P; ++b)
      for (int k = 0; k < n; ++k) {
        double phase = -g.frequency(k) * mesh.points[b][a];
        phases_[a][static_cast<std::size_t>(b) * n + k] = cplx(std::cos(phase), std::sin(phase));
      }
  }
}

TraceStack TraceCoupling::evaluate(const Spectrum& u) const {
  require(u.grid == grid_, "trace coupling: grid mismatch");
  return trace_gamma(u, mesh_, m_);
}

Spectrum TraceCoupling::adjoint(const TraceStack& mu) const {
  require(mu.orders() == m_, "trace coupling: order mismatch");
  const int n = grid_.points;
  const int P = mesh_.count();
  const std::size_t n2 = static_cast<std::size_t>(n) * n;

  Eigen::Map<const EMat> W0(phases_[0].data(), P, n);
  EMat W12(P, n2);
  for (int b = 0; b < P; ++b) {
    const cplx* p1 = &phases_[1][static_cast<std::size_t>(b) * n];
    const cplx* p2 = &phases_[2][static_cast<std::size_t>(b) * n];
    cplx* row = W12.data() + static_cast<std::size_t>(b) * n2;
    for (int k1 = 0; k1 < n; ++k1)
      for (int k2 = 0; k2 < n; ++k2) row[static_cast<std::size_t>(k1) * n + k2] = p1[k1] * p2[k2];
  }

  std::vector<double> freq(n);
  for (int k = 0; k < n; ++k) freq[k] = grid_.frequency(k);

  Spectrum out(grid_);
  EVec alpha(P);
  EMat G(P, n2), T(n, n2);
  const cplx iunit(0, 1);

  for (int j = 0; j < m_; ++j) {
    cplx jfactor = std::pow(-iunit, j);
    for (const auto& beta : multi_indices(3, j)) {
      double w = multinomial_weight(j, beta);
      for (int b = 0; b < P; ++b) {
        double nu_beta = 1;
        for (int a = 0; a < 3; ++a)
          for (int rep = 0; rep < beta[a]; ++rep) nu_beta *= mesh_.normals[b][a];
        alpha(b) = mu.f[j][b] * (w * nu_beta);
      }
      G.noalias() = alpha.asDiagonal() * W12;
      T.noalias() = W0.transpose() * G;
      const cplx* tdata = T.data();
      std::size_t idx = 0;
      for (int k0 = 0; k0 < n; ++k0) {
        double f0 = 1;
        for (int rep = 0; rep < beta[0]; ++rep) f0 *= freq[k0];
        for (int k1 = 0; k1 < n; ++k1) {
          double f01 = f0;
          for (int rep = 0; rep < beta[1]; ++rep) f01 *= freq[k1];
          for (int k2 = 0; k2 < n; ++k2, ++idx) {
            double f = f01;
            for (int rep = 0; rep < beta[2]; ++rep) f *= freq[k2];
            out.c[idx] += jfactor * f * tdata[idx];
          }
        }
      }
    }
  }
  return out;
}

std::vector<cplx> TraceCoupling::weighted_gram(const std::vector<double>& w) const {
  require(w.size() == grid_.size(), "weighted_gram: weight size mismatch");
  const int n = grid_.points;
  const int P = mesh_.count();
  const int mp = m_ * P;
  const cplx iunit(0, 1);

  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(mp, mp);
  const std::size_t chunk = 4096;
  Eigen::MatrixXcd B(mp, chunk);
  std::vector<double> freq(n);
  for (int k = 0; k < n; ++k) freq[k] = grid_.frequency(k);

  for (std::size_t base = 0; base < grid_.size(); base += chunk) {
    std::size_t len = std::min(chunk, grid_.size() - base);
    for (std::size_t c = 0; c < len; ++c) {
      std::size_t idx = base + c;
      auto ix = grid_.unflatten(idx);
      double sw = std::sqrt(w[idx]);
      std::array<double, 3> xi{freq[ix[0]], freq[ix[1]], freq[ix[2]]};
      for (int b = 0; b < P; ++b) {
        // e^{i k.x_b} is the conjugate of the stored phase tables
        cplx e = std::conj(phases_[0][static_cast<std::size_t>(b) * n + ix[0]] *
                           phases_[1][static_cast<std::size_t>(b) * n + ix[1]] *
                           phases_[2][static_cast<std::size_t>(b) * n + ix[2]]);
        double nudot = 0;
        for (int a = 0; a < 3; ++a) nudot += mesh_.normals[b][a] * xi[a];
        cplx phi = e * sw;
        for (int j = 0; j < m_; ++j) {
          B(j * P + b, c) = phi;
          phi *= iunit * nudot;
        }
      }
    }
    K.selfadjointView<Eigen::Lower>().rankUpdate(B.leftCols(len));
  }

  std::vector<cplx> out(static_cast<std::size_t>(mp) * mp);
  Eigen::MatrixXcd full = K.selfadjointView<Eigen::Lower>();
  for (int r = 0; r < mp; ++r)
    for (int c = 0; c < mp; ++c) out[static_cast<std::size_t>(r) * mp + c] = full(r, c);
  return out;
}

Spectrum apply_operator_adjoint(const DiscreteOperator& op, const Spectrum& u) {
  require(!op.conjugation.active, "operator adjoint: only the unconjugated form is needed");
  AdjointCoefficients adj = build_adjoint_coefficients(op);
  return apply_adjoint_with(op, adj, u);
}

Spectrum solve_least_squares(const DiscreteOperator& op, const ScalarField* F,
                             const TraceStack& f, const SolverOptions& opts,
                             SolveReport* report, const Spectrum* background) {
  require(!op.conjugation.active, "dirichlet solver: conjugated operators use solve_conjugated");
  const Grid& g = op.grid;
  require(g.dim == 3, "dirichlet solver: 3-d only");
  require(f.orders() == op.params.m, "dirichlet solver: trace stack must carry m orders");
  if (F) require(F->grid == g, "dirichlet solver: inhomogeneity grid mismatch");

  auto t_start = std::chrono::steady_clock::now();

  const int m = op.params.m;
  const std::size_t nn = g.size();
  const double box_volume = g.cell_volume() * static_cast<double>(nn);
  double ext_sum = 0;
  std::vector<double> we = exterior_weights(g, opts, f.mesh.radius, &ext_sum);
  TraceCoupling coupling(g, f.mesh, m);
  AdjointCoefficients adj = build_adjoint_coefficients(op);
  const double tau_w = opts.tau_trace * f.mesh.weight;
  const int P = f.mesh.count();
  const int mp = m * P;

  // Effective data after subtracting the background field.
  ScalarField F_eff;
  if (F) F_eff = *F;
  TraceStack f_eff = f;
  Spectrum ext_shift;  // rhs piece from the background's exterior tail
  bool has_ext_shift = false;
  if (background) {
    Spectrum Lb = apply_operator(op, *background);
    ScalarField Lb_phys = fft_inverse(Lb);
    if (!F) {
      F_eff = Lb_phys;
      F_eff *= cplx(-1, 0);
    } else {
      F_eff -= Lb_phys;
    }
    TraceStack tb = coupling.evaluate(*background);
    for (int j = 0; j < f_eff.orders(); ++j)
      for (int b = 0; b < P; ++b) f_eff.f[j][b] -= tb.f[j][b];
    ScalarField bg_phys = fft_inverse(*background);
    for (std::size_t i = 0; i < nn; ++i) bg_phys.v[i] *= we[i];
    ext_shift = analysis_adjoint(bg_phys);
    has_ext_shift = true;
  }
  const bool has_F = (F != nullptr) || background;

  // Diagonal core: box volume times |xi|^{4m} from the PDE block (exact for
  // the free operator) plus the exact frequency diagonal of the exterior
  // multiplier.
  std::vector<double> dinv(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    auto xi = g.freq(i);
    double q2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    double sym = std::pow(q2, m);
    dinv[i] = 1.0 / (box_volume * sym * sym + ext_sum);
  }

  std::array<std::uint64_t, 6> key{static_cast<std::uint64_t>(g.points),
                                   static_cast<std::uint64_t>(P),
                                   static_cast<std::uint64_t>(m),
                                   dbits(f.mesh.radius),
                                   dbits(tau_w),
                                   dbits(ext_sum)};
  std::shared_ptr<Eigen::LLT<Eigen::MatrixXcd>> llt;
  {
    std::lock_guard<std::mutex> lock(g_cap_mutex);
    auto it = g_cap_cache.find(key);
    if (it != g_cap_cache.end()) llt = it->second;
  }
  if (!llt) {
    std::vector<cplx> gram = coupling.weighted_gram(dinv);
    Eigen::MatrixXcd K(mp, mp);
    for (int r = 0; r < mp; ++r)
      for (int c = 0; c < mp; ++c) K(r, c) = gram[static_cast<std::size_t>(r) * mp + c];
    K.diagonal().array() += cplx(1.0 / tau_w, 0);
    llt = std::make_shared<Eigen::LLT<Eigen::MatrixXcd>>(K);
    require(llt->info() == Eigen::Success, "dirichlet solver: capacitance factorization failed");
    std::lock_guard<std::mutex> lock(g_cap_mutex);
    g_cap_cache[key] = llt;
  }
  TracePreconditioner M{dinv, llt, &coupling, &g};

  auto normal_apply = [&](const KrylovVec& uin, KrylovVec& uout) {
    Spectrum u(g);
    u.c = uin;

    Spectrum acc = apply_adjoint_with(op, adj, apply_operator(op, u));
    acc *= cplx(box_volume, 0);

    TraceStack tv = coupling.evaluate(u);
    for (auto& row : tv.f)
      for (auto& v : row) v *= tau_w;
    acc += coupling.adjoint(tv);

    ScalarField pe = fft_inverse(u);
    for (std::size_t i = 0; i < nn; ++i) pe.v[i] *= we[i];
    acc += analysis_adjoint(pe);

    uout = std::move(acc.c);
  };

  // rhs = box volume L* F_hat + tau_w E* f - exterior background shift
  Spectrum rhs(g);
  if (has_F) {
    rhs = apply_adjoint_with(op, adj, fft_forward(F_eff));
    rhs *= cplx(box_volume, 0);
  }
  {
    TraceStack fw = f_eff;
    for (auto& row : fw.f)
      for (auto& v : row) v *= tau_w;
    rhs += coupling.adjoint(fw);
  }
  if (has_ext_shift) rhs -= ext_shift;

  KrylovVec y(nn, cplx(0, 0));
  auto precond = [&M](const KrylovVec& r, KrylovVec& out) { M.apply(r, out); };
  KrylovStats stats = pcg_hermitian(normal_apply, precond, rhs.c, y, opts.tol,
                                    opts.max_iterations);

  Spectrum u(g);
  u.c = std::move(y);
  if (background) u += *background;

  if (report) {
    report->converged = stats.converged;
    report->iterations = stats.iterations;
    report->rel_residual = stats.rel_residual;
    report->kind = F ? "inhomogeneous" : "dirichlet";

    Spectrum Lu = apply_operator(op, u);
    ScalarField resid = fft_inverse(Lu);
    if (F) resid -= *F;
    double pde = 0;
    double dv = g.cell_volume();
    for (std::size_t i = 0; i < nn; ++i) pde += dv * std::norm(resid.v[i]);
    report->pde_term = pde;

    TraceStack tu = coupling.evaluate(u);
    double tmis = 0, tnorm = 0;
    for (int j = 0; j < f.orders(); ++j)
      for (int b = 0; b < P; ++b) {
        tmis += std::norm(tu.f[j][b] - f.f[j][b]);
        tnorm += std::norm(f.f[j][b]);
      }
    report->trace_term = tau_w * tmis;
    report->trace_mismatch = tnorm > 0 ? std::sqrt(tmis / tnorm) : std::sqrt(tmis);

    ScalarField up = fft_inverse(u);
    double ext = 0;
    for (std::size_t i = 0; i < nn; ++i) ext += we[i] * std::norm(up.v[i]);
    report->exterior_term = ext;

    std::vector<double> ball = omega_weights(g, f.mesh.radius);
    double rin = 0, rden = 0, uin = 0;
    for (std::size_t i = 0; i < nn; ++i) {
      rin += ball[i] * dv * std::norm(resid.v[i]);
      if (F) rden += ball[i] * dv * std::norm(F->v[i]);
      uin += ball[i] * dv * std::norm(up.v[i]);
    }
    double denom = (F && rden > 0) ? std::sqrt(rden) : std::sqrt(uin);
    report->interior_residual = denom > 0 ? std::sqrt(rin) / denom : std::sqrt(rin);

    report->wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
    log_report(*report, g);
  }
  return u;
}

Spectrum solve_dirichlet(const DiscreteOperator& op, const TraceStack& f,
                         const SolverOptions& opts, SolveReport* report) {
  return solve_least_squares(op, nullptr, f, opts, report);
}

Spectrum solve_inhomogeneous(const DiscreteOperator& op, const ScalarField& F,
                             const BoundaryMesh& mesh, const SolverOptions& opts,
                             SolveReport* report) {
  TraceStack zero = zero_traces(mesh, op.params.m);
  return solve_least_squares(op, &F, zero, opts, report);
}

Spectrum solve_conjugated(const DiscreteOperator& op, const Spectrum& rhs,
                          const SolverOptions& opts, SolveReport* report) {
  require(op.conjugation.active, "conjugated solver: operator carries no conjugation");
  const Grid& g = op.grid;
  require(rhs.grid == g, "conjugated solver: rhs grid mismatch");
  double h = op.conjugation.h;
  double h_floor = min_resolvable_h(g, op.conjugation.zeta);
  if (h < h_floor)
    throw std::invalid_argument("conjugated solver: h below the resolvable floor " +
                                std::to_string(h_floor));

  auto t_start = std::chrono::steady_clock::now();

  std::vector<cplx> symbol(g.size());
  double pmax = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    symbol[i] = op.principal_symbol(g.freq(i));
    pmax = std::max(pmax, std::abs(symbol[i]));
  }
  require(pmax > 0, "conjugated solver: degenerate symbol");
  double floor2 = std::pow(1e-11 * pmax, 2);

  auto apply = [&](const KrylovVec& xin, KrylovVec& xout) {
    Spectrum u(g);
    u.c = xin;
    Spectrum Lu = apply_operator(op, u);
    xout = std::move(Lu.c);
  };
  auto precond = [&](const KrylovVec& rin, KrylovVec& rout) {
    rout.resize(rin.size());
    for (std::size_t i = 0; i < rin.size(); ++i)
      rout[i] = rin[i] * std::conj(symbol[i]) / (std::norm(symbol[i]) + floor2);
  };

  KrylovVec x(g.size(), cplx(0, 0));
  KrylovStats stats = gmres_right(apply, precond, rhs.c, x, opts.tol,
                                  opts.max_iterations, 80);

  Spectrum u(g);
  u.c = std::move(x);

  if (report) {
    report->converged = stats.converged;
    report->iterations = stats.iterations;
    report->rel_residual = stats.rel_residual;
    report->kind = "conjugated";
    report->h = h;
    double num = semiclassical_norm(u, 0.5 * op.params.m, h) * std::pow(h, op.params.m);
    double den = semiclassical_norm(rhs, -0.5 * op.params.m, h);
    report->norm_ratio = den > 0 ? num / den : 0;
    report->wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
    log_report(*report, g);
  }
  return u;
}

CoercivityEstimate coercivity_probe(const VectorField& A, const ScalarField& q,
                                    const ProblemParams& params, const Grid& g,
                                    const DomainSpec& dom, int n_samples,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double taper = std::max(0.45, 2.2 * g.spacing());
  ScalarField mask = radial_mask_c6(g, dom.omega_radius - taper - 0.05,
                                    dom.omega_radius - 0.05);

  double sxx = 0, sxy = 0, syy = 0, sax = 0, say = 0;
  std::vector<std::array<double, 3>> rows;  // re_a, x, y
  rows.reserve(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    Spectrum b = random_band_spectrum(g, 6, rng);
    ScalarField ph = fft_inverse(b);
    for (std::size_t i = 0; i < ph.size(); ++i) ph.v[i] *= mask.v[i];
    Spectrum u = fft_forward(ph);

    double re_a = std::real(sesquilinear_a(A, q, u, u, params.m));
    double x = std::pow(semiclassical_norm(u, params.m, 1.0), 2);
    double y = std::pow(u.l2(), 2);
    rows.push_back({re_a, x, y});
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    sax += re_a * x;
    say += re_a * y;
  }

  // least squares for re_a = C x - C0 y
  double det = sxx * syy - sxy * sxy;
  CoercivityEstimate est;
  est.samples = n_samples;
  if (std::abs(det) > 0) {
    est.C = (sax * syy - say * sxy) / det;
    est.C0 = -(say * sxx - sax * sxy) / det;
  }
  double worst = 0;
  for (const auto& r : rows)
    worst = std::min(worst, (r[0] - est.C * r[1] + est.C0 * r[2]) / r[1]);
  est.worst_margin = worst;
  return est;
}

}  // namespace pcgo
