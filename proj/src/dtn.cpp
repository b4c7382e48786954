#include "pcgo/dtn.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "pcgo/forms.hpp"

namespace pcgo {

namespace {

// Weighted sampling matrix of the basis over the mesh: row (j, b), column a.
Eigen::MatrixXcd sampling_matrix(const BoundaryBasis& basis) {
  const int P = basis.mesh.count();
  const int rows = basis.m * P;
  Eigen::MatrixXcd S(rows, basis.K());
  double sw = std::sqrt(basis.mesh.weight);
  for (int a = 0; a < basis.K(); ++a)
    for (int j = 0; j < basis.m; ++j)
      for (int b = 0; b < P; ++b)
        S(j * P + b, a) = sw * basis.data[a].f[j][b];
  return S;
}

bool is_zero(const VectorField& A, const ScalarField& q) {
  for (int j = 0; j < A.dim(); ++j)
    for (cplx c : A[j].v)
      if (c != cplx(0, 0)) return false;
  for (cplx c : q.v)
    if (c != cplx(0, 0)) return false;
  return true;
}

}  // namespace

BoundaryBasis make_boundary_basis(const Grid& g, const DomainSpec& dom, const BoundaryMesh& mesh,
                                  int lmax, int m) {
  BoundaryBasis basis;
  basis.mesh = mesh;
  basis.m = m;
  basis.lmax = lmax;
  basis.generators = harmonic_generators(g, dom, mesh, lmax, m);
  basis.data.reserve(basis.generators.size());
  for (const auto& gen : basis.generators) basis.data.push_back(trace_gamma(gen.field, mesh, m));

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sampling_matrix(basis));
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  require(smin > 0, "boundary basis: dependent trace stacks on this mesh");
  basis.gram_condition = std::pow(svd.singularValues()(0) / smin, 2);
  return basis;
}

ScalarField ball_quadrature(const Grid& g, double radius) {
  require(g.dim == 3, "ball quadrature: 3-d only");
  ScalarField w(g);
  std::vector<double> frac = omega_weights(g, radius);
  const double dv = g.cell_volume();
  for (std::size_t i = 0; i < g.size(); ++i) w.v[i] = dv * frac[i];
  return w;
}

cplx weak_dtn_pairing(const VectorField& A, const ScalarField& q, int m, const Spectrum& u,
                      const Spectrum& v, const ScalarField& ball) {
  require(u.grid == v.grid && u.grid == ball.grid, "dtn pairing: grid mismatch");
  cplx acc(0, 0);
  for (const auto& alpha : multi_indices(3, m)) {
    double c = multinomial_weight(m, alpha);
    ScalarField du = fft_inverse(derivative_d_multi(u, alpha));
    ScalarField dv = fft_inverse(derivative_d_multi(v, alpha));
    cplx s(0, 0);
    for (std::size_t i = 0; i < du.size(); ++i)
      s += du.v[i] * std::conj(dv.v[i]) * ball.v[i].real();
    acc += c * s;
  }
  if (!is_zero(A, q)) {
    Spectrum vbar = conj_spectrum(v);
    acc += bilinear_B_A(A, u, vbar);
    acc += bilinear_b_q(q, u, vbar);
  }
  return acc;
}

DtnMatrix assemble_dtn(const ProblemParams& params, const Grid& g, const VectorField& A,
                       const ScalarField& q, const BoundaryBasis& basis,
                       const SolverOptions& opts, AssembleStats* stats) {
  const int K = basis.K();
  require(K > 0, "assemble_dtn: empty basis");
  require(basis.m == params.m, "assemble_dtn: basis order mismatch");
  auto t0 = std::chrono::steady_clock::now();

  const bool free_case = is_zero(A, q);
  DiscreteOperator op = free_case ? DiscreteOperator::free_operator(params, g)
                                  : DiscreteOperator::with_coefficients(params, g, A, q);
  ScalarField ball = ball_quadrature(g, basis.mesh.radius);
  const auto alphas = multi_indices(3, params.m);
  const std::size_t nn = g.size();
  const double dv = g.cell_volume();

  // Extension-side cache: conj(D^alpha v_i) times the ball weight, plus the
  // plain conjugate field when coefficient terms are needed.
  std::vector<std::vector<ScalarField>> vw(K);
  std::vector<ScalarField> vconj;
  if (!free_case) vconj.reserve(K);
  for (int i = 0; i < K; ++i) {
    const Spectrum& vi = basis.generators[i].field;
    vw[i].reserve(alphas.size());
    for (const auto& alpha : alphas) {
      ScalarField f = fft_inverse(derivative_d_multi(vi, alpha));
      for (std::size_t x = 0; x < nn; ++x) f.v[x] = std::conj(f.v[x]) * ball.v[x].real();
      vw[i].push_back(std::move(f));
    }
    if (!free_case) {
      ScalarField f = fft_inverse(vi);
      for (auto& c : f.v) c = std::conj(c) * dv;
      vconj.push_back(std::move(f));
    }
  }

  DtnMatrix M;
  M.K = K;
  M.entries.assign(static_cast<std::size_t>(K) * K, cplx(0, 0));
  M.grid_points = g.points;
  M.mesh_count = basis.mesh.count();
  M.radius = basis.mesh.radius;
  M.lmax = basis.lmax;
  M.m = params.m;
  M.tau_trace = opts.tau_trace;
  M.coefficients = free_case ? "free" : "perturbed";

  AssembleStats st;
  for (int j = 0; j < K; ++j) {
    SolveReport rep;
    Spectrum u = solve_dirichlet(op, basis.data[j], opts, &rep);
    require(rep.converged, "assemble_dtn: solver failed on a column");
    st.worst_mismatch = std::max(st.worst_mismatch, rep.trace_mismatch);
    st.worst_interior = std::max(st.worst_interior, rep.interior_residual);
    st.worst_iterations = std::max(st.worst_iterations, rep.iterations);

    std::vector<ScalarField> ua;
    ua.reserve(alphas.size());
    for (const auto& alpha : alphas) ua.push_back(fft_inverse(derivative_d_multi(u, alpha)));

    ScalarField wj(g);
    if (!free_case) {
      for (int l = 0; l < 3; ++l) {
        ScalarField dl = fft_inverse(derivative_d(u, l));
        for (std::size_t x = 0; x < nn; ++x) wj.v[x] += A[l].v[x] * dl.v[x];
      }
      ScalarField up = fft_inverse(u);
      for (std::size_t x = 0; x < nn; ++x) wj.v[x] += q.v[x] * up.v[x];
    }

    for (int i = 0; i < K; ++i) {
      cplx acc(0, 0);
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        cplx s(0, 0);
        const ScalarField& l = ua[a];
        const ScalarField& r = vw[i][a];
        for (std::size_t x = 0; x < nn; ++x) s += l.v[x] * r.v[x];
        acc += multinomial_weight(params.m, alphas[a]) * s;
      }
      if (!free_case) {
        cplx s(0, 0);
        for (std::size_t x = 0; x < nn; ++x) s += wj.v[x] * vconj[i].v[x];
        acc += s;
      }
      M.entries[static_cast<std::size_t>(i) * K + j] = acc;
    }
  }

  st.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (stats) *stats = st;
  return M;
}

DtnMatrix dtn_difference(const DtnMatrix& two, const DtnMatrix& one) {
  require(two.K == one.K, "dtn difference: size mismatch");
  require(two.grid_points == one.grid_points && two.radius == one.radius,
          "dtn difference: geometry mismatch");
  DtnMatrix d = two;
  for (std::size_t i = 0; i < d.entries.size(); ++i) d.entries[i] -= one.entries[i];
  d.coefficients = two.coefficients + " minus " + one.coefficients;
  return d;
}

cplx dtn_pair(const DtnMatrix& M, const std::vector<cplx>& f_coefficients,
              const std::vector<cplx>& h_coefficients) {
  require(static_cast<int>(f_coefficients.size()) == M.K &&
              static_cast<int>(h_coefficients.size()) == M.K,
          "dtn pair: coefficient length mismatch");
  cplx acc(0, 0);
  for (int i = 0; i < M.K; ++i) {
    cplx row(0, 0);
    for (int j = 0; j < M.K; ++j) row += M.at(i, j) * f_coefficients[j];
    acc += std::conj(h_coefficients[i]) * row;
  }
  return acc;
}

std::vector<cplx> project_traces(const BoundaryBasis& basis, const TraceStack& stack) {
  require(stack.orders() == basis.m, "project_traces: order mismatch");
  require(stack.mesh.count() == basis.mesh.count(), "project_traces: mesh mismatch");
  const int P = basis.mesh.count();
  Eigen::MatrixXcd S = sampling_matrix(basis);
  Eigen::VectorXcd rhs(basis.m * P);
  double sw = std::sqrt(basis.mesh.weight);
  for (int j = 0; j < basis.m; ++j)
    for (int b = 0; b < P; ++b) rhs(j * P + b) = sw * stack.f[j][b];
  Eigen::VectorXcd c = S.colPivHouseholderQr().solve(rhs);
  return std::vector<cplx>(c.data(), c.data() + c.size());
}

void write_dtn(const std::string& path, const DtnMatrix& M) {
  nlohmann::json j;
  j["K"] = M.K;
  j["provenance"] = {{"grid_points", M.grid_points}, {"mesh_count", M.mesh_count},
                     {"radius", M.radius},           {"lmax", M.lmax},
                     {"m", M.m},                     {"tau_trace", M.tau_trace},
                     {"coefficients", M.coefficients}};
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < M.K; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = 0; jj < M.K; ++jj) {
      cplx e = M.at(i, jj);
      row.push_back({e.real(), e.imag()});
    }
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  std::ofstream out(path);
  require(out.good(), "write_dtn: cannot open " + path);
  out << j.dump(2) << "\n";
}

DtnMatrix read_dtn(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "read_dtn: cannot open " + path);
  nlohmann::json j;
  in >> j;
  DtnMatrix M;
  M.K = j.at("K").get<int>();
  const auto& prov = j.at("provenance");
  M.grid_points = prov.at("grid_points").get<int>();
  M.mesh_count = prov.at("mesh_count").get<int>();
  M.radius = prov.at("radius").get<double>();
  M.lmax = prov.at("lmax").get<int>();
  M.m = prov.at("m").get<int>();
  M.tau_trace = prov.at("tau_trace").get<double>();
  M.coefficients = prov.at("coefficients").get<std::string>();
  M.entries.reserve(static_cast<std::size_t>(M.K) * M.K);
  for (const auto& row : j.at("entries"))
    for (const auto& e : row) M.entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  require(static_cast<int>(M.entries.size()) == M.K * M.K, "read_dtn: entry count mismatch");
  return M;
}

}  // namespace pcgo
