#pragma once

#include <cstdint>
#include <random>

#include "pcgo/fourier.hpp"

namespace pcgo {

// Seeded band-limited random fields.  All randomness in the project flows
// through std::mt19937_64 engines created from explicit seeds, so every
// artifact is reproducible from its manifest.

// Iid standard complex Gaussian coefficients on the band |k|_inf <= band,
// zero elsewhere.  Requires band < points/2 so the Nyquist row stays empty.
Spectrum random_band_spectrum(const Grid& g, int band, std::mt19937_64& rng);

// Coefficients |c_k| = <|k|>^(-beta) with uniform random phases on the same
// band, Hermitian-symmetrized so the synthesized field is real.
Spectrum random_decay_spectrum(const Grid& g, int band, double beta, std::mt19937_64& rng);

// Enforce c(-k) = conj(c(k)); synthesis becomes real valued.  The input must
// leave Nyquist rows empty.
void hermitian_symmetrize(Spectrum& s);

ScalarField random_band_field(const Grid& g, int band, std::uint64_t seed);
ScalarField random_real_band_field(const Grid& g, int band, std::uint64_t seed);

}  // namespace pcgo
