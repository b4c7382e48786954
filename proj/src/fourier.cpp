#include "pcgo/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "pcgo/errors.hpp"

namespace pcgo {

// ---------------------------------------------------------------------------
// FFTW plan cache.  Plans are created once per (dim, points, sign) with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can execute on any buffer; execution
// itself is thread-safe on distinct arrays.
// ---------------------------------------------------------------------------
namespace {

struct PlanKey {
  int dim, points, sign;
  bool operator<(const PlanKey& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (points != o.points) return points < o.points;
    return sign < o.sign;
  }
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }
  fftw_plan get(int dim, int points, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    PlanKey key{dim, points, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = 1;
    std::vector<int> n(dim, points);
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(points);
    std::vector<cplx> scratch(total);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft(dim, n.data(), ptr, ptr, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    require(p != nullptr, "fft: plan creation failed");
    plans_[key] = p;
    return p;
  }

 private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<PlanKey, fftw_plan> plans_;
};

// (-1)^(i0+i1+...[storage indices]) carries the centered-box phase: for even
// N it equals (-1)^(sum of signed frequencies), turning the plain DFT into
// Fourier-series coefficients w.r.t. x in [-L/2, L/2)^dim.
inline void apply_parity_scale(const Grid& g, std::vector<cplx>& data, double scale) {
  const int n = g.points;
  if (g.dim == 2) {
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        double s = ((i0 + i1) & 1) ? -scale : scale;
        data[idx] *= s;
      }
  } else {
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2, ++idx) {
          double s = ((i0 + i1 + i2) & 1) ? -scale : scale;
          data[idx] *= s;
        }
  }
}

}  // namespace

Spectrum fft_forward(const ScalarField& f) {
  Spectrum s(f.grid);
  s.c = f.v;
  fftw_plan p = PlanCache::instance().get(f.grid.dim, f.grid.points, FFTW_FORWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(s.c.data());
  fftw_execute_dft(p, ptr, ptr);
  apply_parity_scale(f.grid, s.c, 1.0 / static_cast<double>(f.grid.size()));
  return s;
}

ScalarField fft_inverse(const Spectrum& s) {
  ScalarField f(s.grid);
  f.v = s.c;
  apply_parity_scale(s.grid, f.v, 1.0);
  fftw_plan p = PlanCache::instance().get(s.grid.dim, s.grid.points, FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(f.v.data());
  fftw_execute_dft(p, ptr, ptr);
  return f;
}

Spectrum apply_multiplier(const Spectrum& s, const Multiplier& m) {
  Spectrum out = s;
  apply_multiplier_inplace(out, m);
  return out;
}

void apply_multiplier_inplace(Spectrum& s, const Multiplier& m) {
  const Grid& g = s.grid;
  const int n = g.points;
  std::array<double, 3> xi{0, 0, 0};
  std::size_t idx = 0;
  if (g.dim == 2) {
    for (int i0 = 0; i0 < n; ++i0) {
      xi[0] = g.frequency(i0);
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        xi[1] = g.frequency(i1);
        s.c[idx] *= m(xi);
      }
    }
  } else {
    for (int i0 = 0; i0 < n; ++i0) {
      xi[0] = g.frequency(i0);
      for (int i1 = 0; i1 < n; ++i1) {
        xi[1] = g.frequency(i1);
        for (int i2 = 0; i2 < n; ++i2, ++idx) {
          xi[2] = g.frequency(i2);
          s.c[idx] *= m(xi);
        }
      }
    }
  }
}

// For even N the plane xi_a = -N/2 is its own partner under k -> -k, so an
// odd power of xi_a there would destroy the conjugate symmetry of a real
// field's spectrum (the inverse transform grows an imaginary part).  Odd
// derivative factors therefore vanish on their axis' Nyquist plane; even
// powers are unambiguous and keep the full value.
Spectrum derivative_d(const Spectrum& s, int axis) {
  require(axis >= 0 && axis < s.grid.dim, "derivative: axis out of range");
  const double nyq = -s.grid.nyquist();
  return apply_multiplier(s, [axis, nyq](const std::array<double, 3>& xi) {
    if (xi[axis] == nyq) return cplx(0.0, 0.0);
    return cplx(xi[axis], 0.0);
  });
}

Spectrum derivative_d_multi(const Spectrum& s, const std::array<int, 3>& alpha) {
  const double nyq = -s.grid.nyquist();
  return apply_multiplier(s, [&alpha, nyq, dim = s.grid.dim](const std::array<double, 3>& xi) {
    double w = 1;
    for (int a = 0; a < dim; ++a) {
      if ((alpha[a] & 1) && xi[a] == nyq) return cplx(0.0, 0.0);
      for (int r = 0; r < alpha[a]; ++r) w *= xi[a];
    }
    return cplx(w, 0.0);
  });
}

namespace {
// Map each target storage index to the source storage index carrying the
// same signed frequency, or -1 if absent.
std::vector<int> index_map(const Grid& to, const Grid& from) {
  std::vector<int> map(to.points);
  for (int k = 0; k < to.points; ++k) {
    int s = to.signed_index(k);
    if (s < -from.points / 2 || s >= from.points / 2) {
      map[k] = -1;
    } else {
      map[k] = (s + from.points) % from.points;
    }
  }
  return map;
}
}  // namespace

Spectrum pad_spectrum(const Spectrum& s, int new_points) {
  const Grid& g = s.grid;
  if (new_points == g.points) return s;
  Grid g2(g.dim, new_points, g.length);
  Spectrum out(g2);
  auto map = index_map(g2, g);
  const int n2 = g2.points, n1 = g.points;
  if (g.dim == 2) {
    for (int i0 = 0; i0 < n2; ++i0) {
      if (map[i0] < 0) continue;
      for (int i1 = 0; i1 < n2; ++i1) {
        if (map[i1] < 0) continue;
        out.c[static_cast<std::size_t>(i0) * n2 + i1] =
            s.c[static_cast<std::size_t>(map[i0]) * n1 + map[i1]];
      }
    }
  } else {
    for (int i0 = 0; i0 < n2; ++i0) {
      if (map[i0] < 0) continue;
      for (int i1 = 0; i1 < n2; ++i1) {
        if (map[i1] < 0) continue;
        for (int i2 = 0; i2 < n2; ++i2) {
          if (map[i2] < 0) continue;
          out.c[(static_cast<std::size_t>(i0) * n2 + i1) * n2 + i2] =
              s.c[(static_cast<std::size_t>(map[i0]) * n1 + map[i1]) * n1 + map[i2]];
        }
      }
    }
  }
  return out;
}

Spectrum truncate_spectrum(const Spectrum& s, int new_points) {
  require(new_points <= s.grid.points, "truncate: target must not exceed source");
  return pad_spectrum(s, new_points);
}

namespace {
int dealias_points(int n) {
  int m = (3 * n) / 2;
  if (m % 2 != 0) ++m;
  return m;
}
}  // namespace

Spectrum mul_dealiased_spec(const Spectrum& a, const Spectrum& b) {
  require(a.grid == b.grid, "mul: grid mismatch");
  int m = dealias_points(a.grid.points);
  ScalarField fa = fft_inverse(pad_spectrum(a, m));
  ScalarField fb = fft_inverse(pad_spectrum(b, m));
  for (std::size_t i = 0; i < fa.size(); ++i) fa.v[i] *= fb.v[i];
  return truncate_spectrum(fft_forward(fa), a.grid.points);
}

ScalarField mul_dealiased(const ScalarField& a, const ScalarField& b) {
  return fft_inverse(mul_dealiased_spec(fft_forward(a), fft_forward(b)));
}

cplx integrate_product(const Spectrum& a, const Spectrum& b) {
  require(a.grid == b.grid, "integrate: grid mismatch");
  int m = 2 * a.grid.points;
  ScalarField fa = fft_inverse(pad_spectrum(a, m));
  ScalarField fb = fft_inverse(pad_spectrum(b, m));
  cplx s(0, 0);
  for (std::size_t i = 0; i < fa.size(); ++i) s += fa.v[i] * fb.v[i];
  return s * fa.grid.cell_volume();
}

cplx integrate_product3(const Spectrum& a, const Spectrum& b, const Spectrum& c) {
  require(a.grid == b.grid && b.grid == c.grid, "integrate: grid mismatch");
  int m = 2 * a.grid.points;
  ScalarField fa = fft_inverse(pad_spectrum(a, m));
  ScalarField fb = fft_inverse(pad_spectrum(b, m));
  ScalarField fc = fft_inverse(pad_spectrum(c, m));
  cplx s(0, 0);
  for (std::size_t i = 0; i < fa.size(); ++i) s += fa.v[i] * fb.v[i] * fc.v[i];
  return s * fa.grid.cell_volume();
}

cplx inner_lattice(const ScalarField& f, const ScalarField& g) {
  require(f.grid == g.grid, "inner: grid mismatch");
  cplx s(0, 0);
  for (std::size_t i = 0; i < f.size(); ++i) s += f.v[i] * std::conj(g.v[i]);
  return s * f.grid.cell_volume();
}

namespace {
// Quintic smoothstep: C^2, S(0)=0, S(1)=1.
inline double smoothstep5(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}
}  // namespace

ScalarField radial_mask(const Grid& g, double r_inner, double r_outer) {
  require(r_inner >= 0 && r_outer > r_inner, "mask: need 0 <= r_inner < r_outer");
  require(r_outer - r_inner >= 2.0 * g.spacing() * 0.999,
          "mask: taper must span at least 2 grid cells");
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto x = g.point(i);
    double r = 0;
    for (int a = 0; a < g.dim; ++a) r += x[a] * x[a];
    r = std::sqrt(r);
    f.v[i] = smoothstep5((r_outer - r) / (r_outer - r_inner));
  }
  return f;
}

ScalarField radial_mask_c6(const Grid& g, double r_inner, double r_outer) {
  require(r_inner >= 0 && r_outer > r_inner, "mask: need 0 <= r_inner < r_outer");
  require(r_outer - r_inner >= 2.0 * g.spacing() * 0.999,
          "mask: taper must span at least 2 grid cells");
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto x = g.point(i);
    double r = 0;
    for (int a = 0; a < g.dim; ++a) r += x[a] * x[a];
    r = std::sqrt(r);
    double t = (r - r_inner) / (r_outer - r_inner);
    if (t <= 0) {
      f.v[i] = 1.0;
    } else if (t >= 1) {
      f.v[i] = 0.0;
    } else {
      double t2 = t * t;
      double s =
          t2 * t2 * t2 * t *
          (1716.0 +
           t * (-9009.0 +
                t * (20020.0 + t * (-24024.0 + t * (16380.0 + t * (-6006.0 + t * 924.0))))));
      f.v[i] = 1.0 - s;
    }
  }
  return f;
}

ScalarField ball_indicator(const Grid& g, double radius) {
  ScalarField f(g);
  double r2 = radius * radius;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto x = g.point(i);
    double s = 0;
    for (int a = 0; a < g.dim; ++a) s += x[a] * x[a];
    f.v[i] = (s <= r2) ? 1.0 : 0.0;
  }
  return f;
}

ScalarField lattice_mode(const Grid& g, const std::array<int, 3>& k) {
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto x = g.point(i);
    double phase = 0;
    for (int a = 0; a < g.dim; ++a) phase += (2.0 * kPi * k[a] / g.length) * x[a];
    f.v[i] = std::polar(1.0, phase);
  }
  return f;
}

std::vector<cplx> eval_at_points(const Spectrum& s,
                                 const std::vector<std::array<double, 3>>& pts) {
  const Grid& g = s.grid;
  const int n = g.points;
  std::vector<cplx> out(pts.size());

  auto eval_range = [&](std::size_t lo, std::size_t hi) {
    std::vector<cplx> ph0(n), ph1(n), ph2(n);
    for (std::size_t p = lo; p < hi; ++p) {
      for (int a = 0; a < g.dim; ++a) {
        auto& ph = (a == 0) ? ph0 : (a == 1 ? ph1 : ph2);
        for (int k = 0; k < n; ++k) ph[k] = std::polar(1.0, g.frequency(k) * pts[p][a]);
      }
      cplx acc(0, 0);
      if (g.dim == 2) {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < n; ++i0) {
          cplx inner(0, 0);
          for (int i1 = 0; i1 < n; ++i1, ++idx) inner += s.c[idx] * ph1[i1];
          acc += ph0[i0] * inner;
        }
      } else {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < n; ++i0) {
          cplx mid(0, 0);
          for (int i1 = 0; i1 < n; ++i1) {
            cplx inner(0, 0);
            for (int i2 = 0; i2 < n; ++i2, ++idx) inner += s.c[idx] * ph2[i2];
            mid += ph1[i1] * inner;
          }
          acc += ph0[i0] * mid;
        }
      }
      out[p] = acc;
    }
  };

  std::size_t nthreads = std::min<std::size_t>(std::thread::hardware_concurrency(),
                                               (pts.size() + 7) / 8);
  if (nthreads <= 1 || pts.size() < 16) {
    eval_range(0, pts.size());
  } else {
    std::vector<std::thread> workers;
    std::size_t chunk = (pts.size() + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
      std::size_t lo = t * chunk, hi = std::min(pts.size(), lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back(eval_range, lo, hi);
    }
    for (auto& w : workers) w.join();
  }
  return out;
}

double high_band_energy_fraction(const Spectrum& s) {
  const Grid& g = s.grid;
  int cut = g.points / 3;
  double hi = 0, total = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto ix = g.unflatten(i);
    int kmax = 0;
    for (int a = 0; a < g.dim; ++a) kmax = std::max(kmax, std::abs(g.signed_index(ix[a])));
    double e = std::norm(s.c[i]);
    total += e;
    if (kmax > cut) hi += e;
  }
  return (total > 0) ? hi / total : 0.0;
}

}  // namespace pcgo
