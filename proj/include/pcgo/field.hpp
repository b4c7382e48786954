#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pcgo/grid.hpp"

namespace pcgo {

using cplx = std::complex<double>;

// Complex scalar samples on the lattice (physical space).
struct ScalarField {
  Grid grid;
  std::vector<cplx> v;

  ScalarField() = default;
  explicit ScalarField(const Grid& g) : grid(g), v(g.size(), cplx(0, 0)) {}

  std::size_t size() const { return v.size(); }
  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(cplx s);
  double max_abs() const;
  double l2_lattice() const;  // (sum |v|^2 dV)^(1/2)
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(cplx s, ScalarField a);

// Fourier-series coefficients w.r.t. the centered box coordinates, same
// storage layout as the lattice (index k along each axis encodes the signed
// frequency grid.signed_index(k)).
struct Spectrum {
  Grid grid;
  std::vector<cplx> c;

  Spectrum() = default;
  explicit Spectrum(const Grid& g) : grid(g), c(g.size(), cplx(0, 0)) {}

  std::size_t size() const { return c.size(); }
  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }

  // l2 norm carrying the box volume factor, so that it equals the L^2 norm
  // of the synthesized field (Parseval).
  double l2() const;
  Spectrum& operator+=(const Spectrum& o);
  Spectrum& operator-=(const Spectrum& o);
  Spectrum& operator*=(cplx s);
};

struct VectorField {
  std::vector<ScalarField> comp;  // grid.dim components

  VectorField() = default;
  VectorField(const Grid& g, int n) : comp(n, ScalarField(g)) {}
  int dim() const { return static_cast<int>(comp.size()); }
  ScalarField& operator[](int a) { return comp[a]; }
  const ScalarField& operator[](int a) const { return comp[a]; }
};

// Binary snapshot format: 64-byte header (magic "PCGO", version, dim, points,
// box length, manifest tag) followed by row-major little-endian complex
// doubles.  write_field_csv emits a flat x,y,z,re,im table for inspection.
void write_field_dump(const std::string& path, const ScalarField& f, uint64_t manifest_tag);
ScalarField read_field_dump(const std::string& path);
void write_field_csv(const std::string& path, const ScalarField& f, const std::string& comment);

}  // namespace pcgo
