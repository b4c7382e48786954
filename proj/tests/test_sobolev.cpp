#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pcgo/errors.hpp"
#include "pcgo/random_fields.hpp"
#include "pcgo/sobolev.hpp"

using namespace pcgo;

TEST_CASE("index validation") {
  CHECK_THROWS_AS((SobolevIndex{1.0, 1.0, 1.0}).validate(), ValidationError);
  CHECK_THROWS_AS((SobolevIndex{1.0, 2.0, 0.0}).validate(), ValidationError);
  CHECK_THROWS_AS((SobolevIndex{1.0, 2.0, 1.5}).validate(), ValidationError);
  SobolevIndex ok{-2.0, 1.5, 0.25};
  ok.validate();
}

TEST_CASE("H1 norm squared equals L2 plus gradient energy") {
  Grid g(3, 16, 2.0 * kPi);
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 50; ++trial) {
    Spectrum f = random_band_spectrum(g, 6, rng);
    double h1 = semiclassical_norm(f, 1.0, 1.0);
    double l2 = semiclassical_norm(f, 0.0, 1.0);
    double grad2 = 0;
    for (int a = 0; a < 3; ++a) {
      double ga = derivative_d(f, a).l2();
      grad2 += ga * ga;
    }
    double rhs = std::sqrt(l2 * l2 + grad2);
    CHECK(std::abs(h1 - rhs) < 1e-10 * rhs);
  }
}

TEST_CASE("bessel multiplier scales pure modes by the exact weight") {
  Grid g(3, 16, 2.0 * kPi);
  Spectrum s = fft_forward(lattice_mode(g, {1, 0, 0}));
  // |xi| = 1, so <xi>^2 = 2 at s = 2, h = 1.
  Spectrum out = bessel_potential(s, 2.0, 1.0);
  ScalarField f = fft_inverse(out), base = fft_inverse(s);
  double err = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    err = std::max(err, std::abs(f.v[i] - 2.0 * base.v[i]));
  CHECK(err < 1e-12);
  // Composition: <xi>^a then <xi>^b equals <xi>^(a+b).
  std::mt19937_64 rng(7);
  Spectrum r = random_band_spectrum(g, 6, rng);
  Spectrum two = bessel_potential(bessel_potential(r, 0.7, 0.5), -1.9, 0.5);
  Spectrum one = bessel_potential(r, -1.2, 0.5);
  double d = 0;
  for (std::size_t i = 0; i < r.size(); ++i) d = std::max(d, std::abs(two.c[i] - one.c[i]));
  CHECK(d < 1e-12);
}

TEST_CASE("semiclassical norm reduces to the standard norm at h = 1 and is monotone") {
  Grid g(3, 16, 2.0 * kPi);
  std::mt19937_64 rng(11);
  Spectrum f = random_band_spectrum(g, 6, rng);
  CHECK(semiclassical_norm(f, 1.3, 1.0) ==
        doctest::Approx(sobolev_norm(f, SobolevIndex{1.3, 2.0, 1.0})));
  // For s > 0, shrinking h shrinks <h xi>^s pointwise.
  double n1 = semiclassical_norm(f, 2.0, 1.0);
  double n2 = semiclassical_norm(f, 2.0, 0.5);
  double n3 = semiclassical_norm(f, 2.0, 0.25);
  CHECK(n1 >= n2);
  CHECK(n2 >= n3);
  // Monotone in s for fixed h: <xi>^s grows with s when |xi| >= ... holds
  // since <xi> >= 1 always.
  CHECK(semiclassical_norm(f, 0.5, 1.0) <= semiclassical_norm(f, 1.5, 1.0));
  // Zero-frequency field: ratio norm(h)/norm(1) is exactly 1 for all h.
  Spectrum dc(g);
  dc.c[0] = cplx(3, -2);
  CHECK(semiclassical_norm(dc, 2.0, 0.3) == doctest::Approx(semiclassical_norm(dc, 2.0, 1.0)));
}

TEST_CASE("Lp quadrature matches closed forms") {
  Grid g(3, 12, 2.0);
  Spectrum dc(g);
  dc.c[0] = cplx(-1.5, 0);
  // ||c||_p = |c| vol^(1/p).
  CHECK(lp_norm(dc, 1.5) == doctest::Approx(1.5 * std::pow(8.0, 1.0 / 1.5)));
  std::mt19937_64 rng(5);
  Spectrum f = random_band_spectrum(g, 4, rng);
  CHECK(lp_norm(f, 2.0) == doctest::Approx(f.l2()).epsilon(1e-10));
}

TEST_CASE("dual dictionary estimates stay below the Parseval bound and reach it with the maximizer") {
  Grid g(3, 16, 2.0 * kPi);
  DualDictionary dict(g, 5, 0.9, 1.8, 120, 99);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Spectrum f = random_band_spectrum(g, 6, rng);
    double est = dict.estimate(f, 1.5, 0.5);
    double bound = semiclassical_norm(f, -1.5, 0.5);
    CHECK(est <= bound * (1.0 + 1e-10));
    CHECK(est > 0);
    // The analytic maximizer psi = <h xi>^{-2s} f attains the bound.
    Spectrum psi = bessel_potential(f, -3.0, 0.5);
    CHECK(dual_ratio(f, psi, 1.5, 0.5) == doctest::Approx(bound).epsilon(1e-10));
  }
  Spectrum zero(g);
  CHECK(dict.estimate(zero, 1.0, 1.0) == 0.0);
}

TEST_CASE("dictionary refinement changes the estimate by no more than ten percent") {
  Grid g(3, 16, 2.0 * kPi);
  DualDictionary small(g, 5, 0.9, 1.8, 200, 4242);
  DualDictionary large(g, 5, 0.9, 1.8, 2000, 4242);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    Spectrum f = random_band_spectrum(g, 5, rng);
    ScalarField ff = fft_inverse(f);
    ScalarField mask = radial_mask(g, 0.9, 1.8);
    for (std::size_t i = 0; i < ff.size(); ++i) ff.v[i] *= mask.v[i];
    f = fft_forward(ff);
    double e1 = small.estimate(f, 1.0, 0.5);
    double e2 = large.estimate(f, 1.0, 0.5);
    CHECK(e2 >= e1 * (1.0 - 1e-12));
    CHECK((e2 - e1) / e2 <= 0.10);
  }
}

TEST_CASE("multiplication case classification") {
  // The m = 2, n = 3 instantiation: s1 = s2 = 1, p1 = p2 = 2, p = 1.5 sits
  // on the equality branch and is admissible since s_i != n/p_i.
  auto mc = MultiplicationCase::make(1.0, 1.0, 2.0, 2.0, 1.5, 3);
  CHECK(mc.equality_branch);
  CHECK(mc.admissible);
  CHECK(mc.slack == doctest::Approx(0.0));
  // A strictly admissible case.
  auto strict = MultiplicationCase::make(1.0, 1.0, 2.0, 2.0, 1.2, 3);
  CHECK(!strict.equality_branch);
  CHECK(strict.admissible);
  // Violating condition (a): 1/p > 1/p1 + 1/p2.
  CHECK_THROWS_AS(MultiplicationCase::make(1.0, 1.0, 4.0, 4.0, 1.2, 3), ValidationError);
  // s1 <= 0 rejected.
  CHECK_THROWS_AS(MultiplicationCase::make(-1.0, 1.0, 2.0, 2.0, 1.5, 3), ValidationError);
}

TEST_CASE("multiplication probe: paper case has no refinement violations") {
  auto mc = MultiplicationCase::make(1.0, 1.0, 2.0, 2.0, 1.5, 3);
  auto rep = multiplication_probe(mc, {16, 24, 32}, 2.0 * kPi, 0.9, 1.8, 50, 777);
  CHECK(rep.violations == 0);
  CHECK(rep.c_hat > 0);
  CHECK(rep.c_hat < 1e3);
  CHECK(rep.equality_branch);
}

TEST_CASE("multiplication ratio is invariant under amplitude scaling") {
  Grid g(3, 16, 2.0 * kPi);
  std::mt19937_64 rng(3);
  Spectrum u = random_band_spectrum(g, 5, rng);
  Spectrum v = random_band_spectrum(g, 5, rng);
  SobolevIndex iu{1.0, 2.0, 1.0}, ip{1.0, 1.5, 1.0};
  auto ratio = [&](const Spectrum& a, const Spectrum& b) {
    Spectrum prod = mul_dealiased_spec(a, b);
    return sobolev_norm(prod, ip) / (sobolev_norm(a, iu) * sobolev_norm(b, iu));
  };
  double r1 = ratio(u, v);
  Spectrum u10 = u;
  u10 *= cplx(10, 0);
  double r2 = ratio(u10, v);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}
