#include "pcgo/random_fields.hpp"

#include <cmath>

#include "pcgo/errors.hpp"

namespace pcgo {

namespace {

// Visit every coefficient with max-norm frequency index <= band, in a fixed
// storage order so draws are reproducible.
template <typename F>
void for_band(const Grid& g, int band, F&& fn) {
  require(band >= 0 && band < g.points / 2, "random field: band must be < points/2");
  const int n = g.points;
  if (g.dim == 2) {
    for (int i0 = 0; i0 < n; ++i0) {
      if (std::abs(g.signed_index(i0)) > band) continue;
      for (int i1 = 0; i1 < n; ++i1) {
        if (std::abs(g.signed_index(i1)) > band) continue;
        fn(static_cast<std::size_t>(i0) * n + i1,
           std::array<int, 3>{g.signed_index(i0), g.signed_index(i1), 0});
      }
    }
  } else {
    for (int i0 = 0; i0 < n; ++i0) {
      if (std::abs(g.signed_index(i0)) > band) continue;
      for (int i1 = 0; i1 < n; ++i1) {
        if (std::abs(g.signed_index(i1)) > band) continue;
        for (int i2 = 0; i2 < n; ++i2) {
          if (std::abs(g.signed_index(i2)) > band) continue;
          fn((static_cast<std::size_t>(i0) * n + i1) * n + i2,
             std::array<int, 3>{g.signed_index(i0), g.signed_index(i1), g.signed_index(i2)});
        }
      }
    }
  }
}

std::size_t flat_of_signed(const Grid& g, const std::array<int, 3>& k) {
  std::size_t idx = 0;
  for (int a = 0; a < g.dim; ++a) {
    int s = (k[a] + g.points) % g.points;
    idx = idx * g.points + static_cast<std::size_t>(s);
  }
  return idx;
}

}  // namespace

Spectrum random_band_spectrum(const Grid& g, int band, std::mt19937_64& rng) {
  Spectrum s(g);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for_band(g, band, [&](std::size_t idx, const std::array<int, 3>&) {
    double re = gauss(rng), im = gauss(rng);
    s.c[idx] = cplx(re, im);
  });
  return s;
}

Spectrum random_decay_spectrum(const Grid& g, int band, double beta, std::mt19937_64& rng) {
  Spectrum s(g);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  for_band(g, band, [&](std::size_t idx, const std::array<int, 3>& k) {
    double k2 = 0;
    for (int a = 0; a < g.dim; ++a) k2 += static_cast<double>(k[a]) * k[a];
    double mag = std::pow(1.0 + k2, -0.5 * beta);
    s.c[idx] = std::polar(mag, uni(rng));
  });
  hermitian_symmetrize(s);
  return s;
}

void hermitian_symmetrize(Spectrum& s) {
  const Grid& g = s.grid;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto ix = g.unflatten(i);
    std::array<int, 3> k{0, 0, 0}, mk{0, 0, 0};
    bool nyq = false;
    for (int a = 0; a < g.dim; ++a) {
      k[a] = g.signed_index(ix[a]);
      if (k[a] == -g.points / 2) nyq = true;
      mk[a] = -k[a];
    }
    if (nyq) {
      require(std::abs(s.c[i]) == 0.0, "symmetrize: Nyquist row must be empty");
      continue;
    }
    std::size_t j = flat_of_signed(g, mk);
    if (j < i) continue;
    cplx avg = 0.5 * (s.c[i] + std::conj(s.c[j]));
    s.c[i] = avg;
    s.c[j] = std::conj(avg);
  }
}

ScalarField random_band_field(const Grid& g, int band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return fft_inverse(random_band_spectrum(g, band, rng));
}

ScalarField random_real_band_field(const Grid& g, int band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Spectrum s = random_band_spectrum(g, band, rng);
  hermitian_symmetrize(s);
  return fft_inverse(s);
}

}  // namespace pcgo
