#include "pcgo/coefficients.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pcgo/errors.hpp"
#include "pcgo/fourier.hpp"
#include "pcgo/random_fields.hpp"

namespace pcgo {

ExponentClause a_class_clause(int m, int n) {
  if (m < n) return {2.0 * n / m, false};
  if (m == n || m == n + 2) return {2.0, true};
  return {2.0, false};
}

ExponentClause q_class_clause(int m, int n, double delta) {
  if (m <= n) return {2.0 * n / (m - 2.0 * delta), false};
  return {2.0, false};
}

void ProblemParams::validate() const {
  require(m >= 2, "params: operator half-order m must be >= 2");
  require(n == 2 || n == 3, "params: dimension must be 2 or 3");
  require(delta > 0 && delta < 0.5, "params: delta must lie strictly in (0, 1/2)");
  require(a_class_clause(m, n).holds(p_prime), "params: p' violates the A-class exponent table");
  require(q_class_clause(m, n, delta).holds(r_prime),
          "params: r' violates the q-class exponent table");
}

ScalarField make_bump_q(const Grid& g, const DomainSpec& dom, const std::array<double, 3>& center,
                        double sigma, double amplitude, double support_radius) {
  require(sigma > 0, "bump: width must be positive");
  require(support_radius > 0, "bump: support radius must be positive");
  double cnorm = 0;
  for (int a = 0; a < g.dim; ++a) cnorm += center[a] * center[a];
  require(std::sqrt(cnorm) + support_radius < dom.omega_radius,
          "bump: support ball leaks outside Omega");

  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto x = g.point(i);
    double r2 = 0;
    for (int a = 0; a < g.dim; ++a) {
      double d = x[a] - center[a];
      r2 += d * d;
    }
    double t = r2 / (support_radius * support_radius);
    if (t >= 1.0) continue;
    double flat = std::exp(1.0 - 1.0 / (1.0 - t));
    f.v[i] = amplitude * std::exp(-r2 / (2.0 * sigma * sigma)) * flat;
  }
  return f;
}

namespace {

// Shared stream/potential bump used by the vector profiles: a Gaussian core
// with a wide flat-cutoff shoulder so the cutoff is spectrally resolved.
// Nyquist rows are stripped so the iota-xi derivative multiplier commutes
// with conjugation and the derived fields stay real to rounding.
ScalarField profile_bump(const Grid& g, const DomainSpec& dom, const std::array<double, 3>& center,
                         double scale) {
  double radius = 0.87 * dom.omega_radius;
  double plateau = 0.2 * dom.omega_radius;
  double sigma = 0.33 * dom.omega_radius;
  double cnorm = 0;
  for (int a = 0; a < g.dim; ++a) cnorm += center[a] * center[a];
  require(std::sqrt(cnorm) + radius < dom.omega_radius, "profile: support leaks outside Omega");

  ScalarField b(g);
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto x = g.point(i);
    double r2 = 0;
    for (int a = 0; a < g.dim; ++a) {
      double d = x[a] - center[a];
      r2 += d * d;
    }
    double r = std::sqrt(r2);
    if (r >= radius) continue;
    double cut = 1.0;
    if (r > plateau) {
      double u = (r - plateau) / (radius - plateau);
      cut = std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    b.v[i] = scale * std::exp(-r2 / (2.0 * sigma * sigma)) * cut;
  }
  Spectrum s = fft_forward(b);
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto ix = g.unflatten(i);
    for (int a = 0; a < g.dim; ++a)
      if (g.signed_index(static_cast<int>(ix[a])) == -g.points / 2) {
        s.c[i] = cplx(0, 0);
        break;
      }
  }
  return fft_inverse(s);
}

// Plain partial derivative (multiplier i xi_a), as opposed to derivative_d
// which implements D = -i grad.
Spectrum d_axis(const Spectrum& s, int a) {
  return apply_multiplier(s, [a](const std::array<double, 3>& xi) { return cplx(0.0, xi[a]); });
}

VectorField gradient_of(const ScalarField& f) {
  Spectrum s = fft_forward(f);
  VectorField out(f.grid, f.grid.dim);
  for (int a = 0; a < f.grid.dim; ++a) out[a] = fft_inverse(d_axis(s, a));
  return out;
}

}  // namespace

VectorCoefficient make_vector_A(const Grid& g, const DomainSpec& dom, AProfile profile,
                                double scale, std::uint64_t seed) {
  VectorCoefficient out;
  out.A = VectorField(g, g.dim);
  if (scale == 0.0) return out;

  switch (profile) {
    case AProfile::gradient: {
      std::array<double, 3> c{0.05 * dom.omega_radius, -0.03 * dom.omega_radius, 0.0};
      out.potential = profile_bump(g, dom, c, scale);
      out.A = gradient_of(out.potential);
      out.has_potential = true;
      break;
    }
    case AProfile::divergence_free: {
      if (g.dim == 2) {
        // A = (d2 psi, -d1 psi) for a scalar stream function psi.
        std::array<double, 3> c{-0.05 * dom.omega_radius, 0.02 * dom.omega_radius, 0.0};
        ScalarField psi = profile_bump(g, dom, c, scale);
        Spectrum s = fft_forward(psi);
        out.A[0] = fft_inverse(d_axis(s, 1));
        out.A[1] = fft_inverse(d_axis(s, 0));
        for (auto& z : out.A[1].v) z = -z;
      } else {
        // A = curl(Psi) with bump components at staggered centers.
        std::array<Spectrum, 3> ps;
        std::array<std::array<double, 3>, 3> centers = {{{0.06 * dom.omega_radius, 0.0, -0.03 * dom.omega_radius},
                                                         {-0.04 * dom.omega_radius, 0.05 * dom.omega_radius, 0.0},
                                                         {0.0, -0.06 * dom.omega_radius, 0.04 * dom.omega_radius}}};
        for (int c = 0; c < 3; ++c) ps[c] = fft_forward(profile_bump(g, dom, centers[c], scale));
        for (int j = 0; j < 3; ++j) {
          int k = (j + 1) % 3, l = (j + 2) % 3;
          Spectrum dj = d_axis(ps[l], k);
          Spectrum dl = d_axis(ps[k], l);
          for (std::size_t i = 0; i < dj.size(); ++i) dj.c[i] -= dl.c[i];
          out.A[j] = fft_inverse(dj);
        }
      }
      break;
    }
    case AProfile::random_band: {
      int band = std::max(2, g.points / 8);
      double outer = dom.omega_radius - 0.5 * g.spacing();
      double inner = std::min(0.55 * dom.omega_radius, outer - 2.2 * g.spacing());
      require(inner > 0, "vector profile: grid too coarse for the support mask");
      ScalarField mask = radial_mask(g, inner, outer);
      for (int a = 0; a < g.dim; ++a) {
        ScalarField w = random_real_band_field(g, band, seed + 17 * (a + 1));
        double peak = w.max_abs();
        double gain = peak > 0 ? scale / peak : 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) w.v[i] *= gain * mask.v[i];
        out.A[a] = w;
      }
      break;
    }
  }
  return out;
}

Spectrum mollify(const Spectrum& s, double eps) {
  require(eps >= 0, "mollify: width must be nonnegative");
  if (eps == 0.0) return s;
  return apply_multiplier(s, [eps](const std::array<double, 3>& xi) {
    double t = 0;
    for (double c : xi) t += c * c;
    return cplx(std::exp(-0.5 * eps * eps * t), 0.0);
  });
}

ScalarField mollify(const ScalarField& f, double eps) {
  if (eps == 0.0) return f;
  return fft_inverse(mollify(fft_forward(f), eps));
}

VectorField mollify(const VectorField& a, double eps) {
  VectorField out = a;
  for (int c = 0; c < a.dim(); ++c) out[c] = mollify(a[c], eps);
  return out;
}

AdmissibilityReport check_admissibility(const CoefficientSet& set, const ProblemParams& params,
                                        const DomainSpec& dom) {
  AdmissibilityReport rep;
  if (!(params.delta > 0 && params.delta < 0.5)) rep.fail("delta in (0, 1/2)");
  if (!a_class_clause(params.m, params.n).holds(params.p_prime))
    rep.fail("p' below the A-class threshold");
  if (!q_class_clause(params.m, params.n, params.delta).holds(params.r_prime))
    rep.fail("r' below the q-class threshold");

  const Grid& g = set.q.grid;
  double peak = set.q.max_abs();
  for (int c = 0; c < set.A.dim(); ++c) peak = std::max(peak, set.A[c].max_abs());
  double leak = 0;
  for (std::size_t i = 0; i < set.q.size(); ++i) {
    auto x = g.point(i);
    double r2 = 0;
    for (int a = 0; a < g.dim; ++a) r2 += x[a] * x[a];
    if (r2 <= dom.omega_radius * dom.omega_radius) continue;
    leak = std::max(leak, std::abs(set.q.v[i]));
    for (int c = 0; c < set.A.dim(); ++c) leak = std::max(leak, std::abs(set.A[c].v[i]));
  }
  // Derivative-built profiles are band-limited trigonometric polynomials, so
  // their support is only approximate: the leak floor is the spectral tail of
  // the profile at the grid Nyquist, about 1e-2 at 24^3 and 3e-3 at 48^3.
  // Exactly supported families (bumps, masked random bands) sit at zero.
  if (peak > 0) rep.leak_ratio = leak / peak;
  if (rep.leak_ratio > 2e-2) rep.fail("support leaks outside Omega");
  return rep;
}

cplx hat_plus(const Spectrum& s, const std::array<int, 3>& k) {
  const Grid& g = s.grid;
  std::array<std::size_t, 3> ix{0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    int signed_k = -k[a];
    require(signed_k >= -g.points / 2 && signed_k < (g.points + 1) / 2,
            "hat: frequency outside the lattice");
    ix[a] = static_cast<std::size_t>(signed_k >= 0 ? signed_k : signed_k + g.points);
  }
  std::size_t flat = 0;
  for (int a = 0; a < g.dim; ++a) flat = flat * g.points + ix[a];
  return s.c[flat] * g.volume();
}

void write_coefficient_set(const std::string& dir, const CoefficientSet& set,
                           const ProblemParams& params) {
  std::filesystem::create_directories(dir);
  write_field_dump(dir + "/q.pcgo", set.q, set.seed);
  for (int c = 0; c < set.A.dim(); ++c)
    write_field_dump(dir + "/A" + std::to_string(c) + ".pcgo", set.A[c], set.seed);
  nlohmann::json meta;
  meta["m"] = params.m;
  meta["n"] = params.n;
  meta["delta"] = params.delta;
  meta["p_prime"] = params.p_prime;
  meta["r_prime"] = params.r_prime;
  meta["epsilon"] = set.epsilon;
  meta["provenance"] = set.provenance;
  meta["seed"] = set.seed;
  meta["components"] = set.A.dim();
  std::ofstream out(dir + "/coefficients.json");
  require(out.good(), "coefficients: cannot open metadata file for writing");
  out << meta.dump(2) << "\n";
}

CoefficientSet read_coefficient_set(const std::string& dir, const Grid& g) {
  std::ifstream in(dir + "/coefficients.json");
  require(in.good(), "coefficients: metadata file missing");
  nlohmann::json meta = nlohmann::json::parse(in);
  CoefficientSet set;
  set.epsilon = meta.at("epsilon").get<double>();
  set.provenance = meta.at("provenance").get<std::string>();
  set.seed = meta.at("seed").get<std::uint64_t>();
  set.q = read_field_dump(dir + "/q.pcgo");
  require(set.q.grid == g, "coefficients: stored grid does not match");
  int comps = meta.at("components").get<int>();
  set.A = VectorField(g, comps);
  for (int c = 0; c < comps; ++c)
    set.A[c] = read_field_dump(dir + "/A" + std::to_string(c) + ".pcgo");
  return set;
}

}  // namespace pcgo
