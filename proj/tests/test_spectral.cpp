#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "pcgo/errors.hpp"
#include "pcgo/fourier.hpp"
#include "pcgo/random_fields.hpp"

using namespace pcgo;

namespace {

// Independent oracle: direct O(N^(2*dim)) discrete Fourier analysis using
// centered coordinates and signed frequencies, no FFT machinery involved.
Spectrum naive_dft(const ScalarField& f) {
  const Grid& g = f.grid;
  Spectrum s(g);
  for (std::size_t ki = 0; ki < s.size(); ++ki) {
    auto xi = g.freq(ki);
    cplx acc(0, 0);
    for (std::size_t xi_idx = 0; xi_idx < f.size(); ++xi_idx) {
      auto x = g.point(xi_idx);
      double phase = 0;
      for (int a = 0; a < g.dim; ++a) phase += xi[a] * x[a];
      acc += f.v[xi_idx] * std::polar(1.0, -phase);
    }
    s.c[ki] = acc / static_cast<double>(g.size());
  }
  return s;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid validation rejects bad parameters") {
  CHECK_THROWS_AS(Grid(4, 8, 1.0), ValidationError);
  CHECK_THROWS_AS(Grid(3, 7, 1.0), ValidationError);
  CHECK_THROWS_AS(Grid(3, 2, 1.0), ValidationError);
  CHECK_THROWS_AS(Grid(3, 8, -1.0), ValidationError);
  Grid g(3, 8, 2.0 * kPi);
  CHECK(g.size() == 512);
  CHECK(g.spacing() == doctest::Approx(2.0 * kPi / 8));
  CHECK(g.signed_index(0) == 0);
  CHECK(g.signed_index(3) == 3);
  CHECK(g.signed_index(4) == -4);
  CHECK(g.signed_index(7) == -1);
  CHECK(g.coordinate(0) == doctest::Approx(-kPi));
}

TEST_CASE("forward transform matches the naive centered DFT") {
  for (int dim : {2, 3}) {
    Grid g(dim, 8, 2.0 * kPi);
    ScalarField f(g);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    for (auto& v : f.v) v = cplx(gauss(rng), gauss(rng));

    Spectrum fast = fft_forward(f);
    Spectrum slow = naive_dft(f);
    CHECK(max_diff(fast.c, slow.c) < 1e-10);
  }
}

TEST_CASE("pure modes give unit coefficients at their signed frequency") {
  Grid g(3, 12, 2.0 * kPi);
  for (std::array<int, 3> k : {std::array<int, 3>{1, 0, 0}, {0, -2, 0}, {3, 1, -5}, {0, 0, 0}}) {
    Spectrum s = fft_forward(lattice_mode(g, k));
    std::size_t hit = 0;
    double offband = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto ix = g.unflatten(i);
      bool match = true;
      for (int a = 0; a < 3; ++a) match = match && (g.signed_index(ix[a]) == k[a]);
      if (match) {
        hit = i;
      } else {
        offband = std::max(offband, std::abs(s.c[i]));
      }
    }
    CHECK(std::abs(s.c[hit] - cplx(1, 0)) < 1e-12);
    CHECK(offband < 1e-12);
  }
}

TEST_CASE("explicit two-mode field has the frozen coefficients") {
  Grid g(3, 8, 2.0 * kPi);
  ScalarField f(g);
  ScalarField m1 = lattice_mode(g, {1, 0, 0});
  ScalarField m2 = lattice_mode(g, {-2, 1, 0});
  for (std::size_t i = 0; i < f.size(); ++i)
    f.v[i] = 2.0 * m1.v[i] + cplx(3, -1) * m2.v[i];
  Spectrum s = fft_forward(f);
  auto coeff = [&](int k0, int k1, int k2) {
    std::size_t i0 = static_cast<std::size_t>((k0 + 8) % 8);
    std::size_t i1 = static_cast<std::size_t>((k1 + 8) % 8);
    std::size_t i2 = static_cast<std::size_t>((k2 + 8) % 8);
    return s.c[(i0 * 8 + i1) * 8 + i2];
  };
  CHECK(std::abs(coeff(1, 0, 0) - cplx(2, 0)) < 1e-12);
  CHECK(std::abs(coeff(-2, 1, 0) - cplx(3, -1)) < 1e-12);
  CHECK(std::abs(coeff(0, 0, 0)) < 1e-12);
}

TEST_CASE("inverse transform undoes forward to round-off") {
  Grid g(3, 16, 5.0);
  ScalarField f(g);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  for (auto& v : f.v) v = cplx(gauss(rng), gauss(rng));
  ScalarField back = fft_inverse(fft_forward(f));
  double scale = f.max_abs();
  CHECK(max_diff(back.v, f.v) / scale < 1e-12);
}

TEST_CASE("Parseval holds with the volume factor over many random fields") {
  Grid g(3, 16, 2.0 * kPi);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    Spectrum s = random_band_spectrum(g, 7, rng);
    ScalarField f = fft_inverse(s);
    double lhs = f.l2_lattice();
    double rhs = s.l2();
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + rhs));
  }
}

TEST_CASE("spectral derivative multiplies pure modes by their frequency") {
  Grid g(3, 16, 4.0);
  std::array<int, 3> k{2, -3, 1};
  ScalarField mode = lattice_mode(g, k);
  Spectrum s = fft_forward(mode);
  for (int axis = 0; axis < 3; ++axis) {
    ScalarField d = fft_inverse(derivative_d(s, axis));
    double xi = 2.0 * kPi * k[axis] / g.length;
    double err = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
      err = std::max(err, std::abs(d.v[i] - xi * mode.v[i]));
    CHECK(err < 1e-11);
  }
  // D^alpha with alpha = (1,2,0) multiplies by xi0 * xi1^2.
  ScalarField da = fft_inverse(derivative_d_multi(s, {1, 2, 0}));
  double w = (2.0 * kPi * k[0] / g.length) * std::pow(2.0 * kPi * k[1] / g.length, 2);
  double err = 0;
  for (std::size_t i = 0; i < da.size(); ++i)
    err = std::max(err, std::abs(da.v[i] - w * mode.v[i]));
  CHECK(err < 1e-10);
}

TEST_CASE("padding keeps values at coincident lattice points") {
  Grid g(3, 8, 3.0);
  ScalarField f = random_band_field(g, 3, 123);
  Spectrum s = fft_forward(f);
  ScalarField fine = fft_inverse(pad_spectrum(s, 16));
  // Every coarse point (i0,i1,i2) coincides with fine point (2*i0,2*i1,2*i2).
  double err = 0;
  for (int i0 = 0; i0 < 8; ++i0)
    for (int i1 = 0; i1 < 8; ++i1)
      for (int i2 = 0; i2 < 8; ++i2) {
        cplx coarse = f.v[(static_cast<std::size_t>(i0) * 8 + i1) * 8 + i2];
        cplx finev = fine.v[(static_cast<std::size_t>(2 * i0) * 16 + 2 * i1) * 16 + 2 * i2];
        err = std::max(err, std::abs(coarse - finev));
      }
  CHECK(err < 1e-12);
  // Truncating back recovers the original coefficients.
  Spectrum back = truncate_spectrum(pad_spectrum(s, 16), 8);
  CHECK(max_diff(back.c, s.c) < 1e-13);
}

TEST_CASE("dealiased product of modes lands on the sum frequency") {
  Grid g(3, 8, 2.0 * kPi);
  ScalarField a = lattice_mode(g, {2, 0, -1});
  ScalarField b = lattice_mode(g, {1, -2, 1});
  ScalarField p = mul_dealiased(a, b);
  ScalarField expect = lattice_mode(g, {3, -2, 0});
  CHECK(max_diff(p.v, expect.v) < 1e-12);
}

TEST_CASE("dealiased product kills contributions that would wrap") {
  // On the bare 8-lattice the product of modes 3 and 3 aliases to -2; the
  // padded product keeps only the true frequency 6, which the 8-band cannot
  // represent, so the dealiased result is zero.
  Grid g(3, 8, 2.0 * kPi);
  ScalarField a = lattice_mode(g, {3, 0, 0});
  Spectrum p = mul_dealiased_spec(fft_forward(a), fft_forward(a));
  double mx = 0;
  for (auto& c : p.c) mx = std::max(mx, std::abs(c));
  CHECK(mx < 1e-12);
}

TEST_CASE("product integrals are exact including cases that alias on the base lattice") {
  Grid g(3, 8, 2.0 * kPi);
  double vol = g.volume();
  Spectrum s1 = fft_forward(lattice_mode(g, {3, 0, 0}));
  Spectrum s2 = fft_forward(lattice_mode(g, {3, 1, 0}));
  Spectrum s3 = fft_forward(lattice_mode(g, {2, -1, 0}));
  // 3 + 3 + 2 = 8 wraps to 0 on the 8-lattice but the true integral vanishes.
  CHECK(std::abs(integrate_product3(s1, s2, s3)) < 1e-10);
  // A genuinely resonant triple integrates to the box volume.
  Spectrum s4 = fft_forward(lattice_mode(g, {-6, -1, 0}));
  // -6 is out of band for N = 8; build it on a finer grid instead.
  Grid g16(3, 16, 2.0 * kPi);
  Spectrum t1 = fft_forward(lattice_mode(g16, {3, 0, 0}));
  Spectrum t2 = fft_forward(lattice_mode(g16, {3, 1, 0}));
  Spectrum t3 = fft_forward(lattice_mode(g16, {-6, -1, 0}));
  CHECK(std::abs(integrate_product3(t1, t2, t3) - cplx(vol, 0)) < 1e-9);
  // Two-factor version.
  CHECK(std::abs(integrate_product(t1, fft_forward(lattice_mode(g16, {-3, 0, 0}))) -
                 cplx(vol, 0)) < 1e-10);
  CHECK(std::abs(integrate_product(t1, t2)) < 1e-10);
  (void)s4;
}

TEST_CASE("random product integral matches the coefficient convolution sum") {
  Grid g(3, 8, 3.0);
  std::mt19937_64 rng(5);
  Spectrum a = random_band_spectrum(g, 3, rng);
  Spectrum b = random_band_spectrum(g, 3, rng);
  // Direct sum: integral of a*b = vol * sum_k a_k b_{-k}.
  cplx direct(0, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ix = g.unflatten(i);
    std::array<int, 3> mk;
    for (int axis = 0; axis < 3; ++axis) {
      int s = -g.signed_index(ix[axis]);
      mk[axis] = (s + g.points) % g.points;
    }
    std::size_t j = (static_cast<std::size_t>(mk[0]) * g.points + mk[1]) * g.points + mk[2];
    direct += a.c[i] * b.c[j];
  }
  direct *= g.volume();
  cplx quad = integrate_product(a, b);
  CHECK(std::abs(quad - direct) < 1e-10 * (1.0 + std::abs(direct)));
}

TEST_CASE("point evaluation agrees with the direct synthesis sum") {
  Grid g(3, 8, 2.5);
  ScalarField f = random_band_field(g, 3, 7);
  Spectrum s = fft_forward(f);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-1.2, 1.2);
  std::vector<std::array<double, 3>> pts;
  for (int p = 0; p < 20; ++p) pts.push_back({uni(rng), uni(rng), uni(rng)});
  auto vals = eval_at_points(s, pts);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    cplx direct(0, 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto xi = g.freq(i);
      double phase = 0;
      for (int a = 0; a < 3; ++a) phase += xi[a] * pts[p][a];
      direct += s.c[i] * std::polar(1.0, phase);
    }
    CHECK(std::abs(vals[p] - direct) < 1e-10 * (1.0 + std::abs(direct)));
  }
  // Lattice points reproduce the field samples.
  std::vector<std::array<double, 3>> latpts = {g.point(0), g.point(77), g.point(345)};
  auto latvals = eval_at_points(s, latpts);
  CHECK(std::abs(latvals[0] - f.v[0]) < 1e-11);
  CHECK(std::abs(latvals[1] - f.v[77]) < 1e-11);
  CHECK(std::abs(latvals[2] - f.v[345]) < 1e-11);
}

TEST_CASE("radial mask is one inside, zero outside, and within [0,1]") {
  Grid g(3, 32, 2.0 * kPi);
  ScalarField m = radial_mask(g, 1.0, 2.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto x = g.point(i);
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    double val = m.v[i].real();
    CHECK(m.v[i].imag() == 0.0);
    CHECK(val >= 0.0);
    CHECK(val <= 1.0);
    if (r <= 1.0) CHECK(val == 1.0);
    if (r >= 2.0) CHECK(val == 0.0);
  }
  CHECK_THROWS_AS(radial_mask(g, 2.0, 1.0), ValidationError);
  CHECK_THROWS_AS(radial_mask(g, 1.0, 1.0 + 0.5 * g.spacing()), ValidationError);
}

TEST_CASE("high band fraction flags energy above two thirds of the band") {
  Grid g(3, 12, 2.0 * kPi);
  Spectrum low = fft_forward(lattice_mode(g, {2, 0, 0}));
  Spectrum high = fft_forward(lattice_mode(g, {5, 0, 0}));
  CHECK(high_band_energy_fraction(low) == doctest::Approx(0.0));
  CHECK(high_band_energy_fraction(high) == doctest::Approx(1.0));
}

TEST_CASE("random fields are deterministic in the seed and band limited") {
  Grid g(3, 16, 2.0 * kPi);
  ScalarField a = random_band_field(g, 5, 42);
  ScalarField b = random_band_field(g, 5, 42);
  ScalarField c = random_band_field(g, 5, 43);
  CHECK(max_diff(a.v, b.v) == 0.0);
  CHECK(max_diff(a.v, c.v) > 1e-8);
  Spectrum sa = fft_forward(a);
  double offband = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    auto ix = g.unflatten(i);
    int kmax = 0;
    for (int axis = 0; axis < 3; ++axis)
      kmax = std::max(kmax, std::abs(g.signed_index(ix[axis])));
    if (kmax > 5) offband = std::max(offband, std::abs(sa.c[i]));
  }
  CHECK(offband < 1e-13);

  ScalarField r = random_real_band_field(g, 5, 42);
  double im = 0;
  for (auto& v : r.v) im = std::max(im, std::abs(v.imag()));
  CHECK(im < 1e-13);
}

TEST_CASE("decaying spectra follow the prescribed magnitude profile") {
  Grid g(3, 16, 2.0 * kPi);
  std::mt19937_64 rng(2024);
  Spectrum s = random_decay_spectrum(g, 6, 0.75, rng);
  ScalarField f = fft_inverse(s);
  double im = 0;
  for (auto& v : f.v) im = std::max(im, std::abs(v.imag()));
  CHECK(im < 1e-13);
  // Hermitian pairs share magnitude <|k|>^(-beta) before symmetrization and
  // keep it afterwards (the two draws average, staying within the envelope).
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto ix = g.unflatten(i);
    double k2 = 0;
    int kmax = 0;
    for (int axis = 0; axis < 3; ++axis) {
      int k = g.signed_index(ix[axis]);
      k2 += static_cast<double>(k) * k;
      kmax = std::max(kmax, std::abs(k));
    }
    if (kmax > 6) {
      CHECK(std::abs(s.c[i]) == 0.0);
    } else {
      CHECK(std::abs(s.c[i]) <= std::pow(1.0 + k2, -0.375) + 1e-12);
    }
  }
}

TEST_CASE("field dumps round trip through the binary format") {
  Grid g(2, 8, 1.5);
  ScalarField f = random_band_field(g, 3, 9);
  std::string path = "spectral_dump_test.pcgo";
  write_field_dump(path, f, 0xabcdef12u);
  ScalarField back = read_field_dump(path);
  CHECK(back.grid == f.grid);
  CHECK(max_diff(back.v, f.v) == 0.0);
  std::remove(path.c_str());

  std::string csv = "spectral_dump_test.csv";
  write_field_csv(csv, f, "test field");
  std::FILE* fp = std::fopen(csv.c_str(), "r");
  CHECK(fp != nullptr);
  if (fp) std::fclose(fp);
  std::remove(csv.c_str());
}
