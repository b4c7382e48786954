#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcgo/errors.hpp"

namespace pcgo {

inline constexpr double kPi = 3.14159265358979323846;

// Uniform periodic lattice on the centered box [-L/2, L/2)^dim.
// Storage is row-major with the last axis fastest.  Frequencies are
// xi_k = 2*pi*k/L with signed k in [-N/2, N/2).
struct Grid {
  int dim = 3;
  int points = 0;     // per axis, must be even
  double length = 0;  // box edge L

  Grid() = default;
  Grid(int dim_, int points_, double length_) : dim(dim_), points(points_), length(length_) {
    require(dim == 2 || dim == 3, "grid: dim must be 2 or 3");
    require(points >= 4 && points % 2 == 0, "grid: points per axis must be even and >= 4");
    require(length > 0, "grid: box length must be positive");
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(points);
    return s;
  }
  double spacing() const { return length / points; }
  double cell_volume() const {
    double v = 1;
    for (int a = 0; a < dim; ++a) v *= spacing();
    return v;
  }
  double volume() const {
    double v = 1;
    for (int a = 0; a < dim; ++a) v *= length;
    return v;
  }

  // Lattice coordinate along one axis.
  double coordinate(int i) const { return -0.5 * length + i * spacing(); }

  // Signed frequency index for a storage index in [0, N).
  int signed_index(int k) const { return (k < points / 2) ? k : k - points; }
  double frequency(int k) const { return 2.0 * kPi * signed_index(k) / length; }
  double nyquist() const { return kPi * points / length; }

  bool operator==(const Grid& o) const {
    return dim == o.dim && points == o.points && length == o.length;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

  // Decode a flat index into per-axis indices.
  std::array<int, 3> unflatten(std::size_t idx) const {
    std::array<int, 3> ix{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
      ix[a] = static_cast<int>(idx % points);
      idx /= points;
    }
    return ix;
  }
  std::array<double, 3> point(std::size_t idx) const {
    auto ix = unflatten(idx);
    std::array<double, 3> x{0, 0, 0};
    for (int a = 0; a < dim; ++a) x[a] = coordinate(ix[a]);
    return x;
  }
  std::array<double, 3> freq(std::size_t idx) const {
    auto ix = unflatten(idx);
    std::array<double, 3> xi{0, 0, 0};
    for (int a = 0; a < dim; ++a) xi[a] = frequency(ix[a]);
    return xi;
  }
};

// Concentric domains for the boundary-value problem: the measurement domain
// Omega and the larger ball B used by the scattering-style constructions,
// both compactly inside the periodic box.
struct DomainSpec {
  double omega_radius = 1.5;
  double ball_radius = 2.0;

  void validate(const Grid& g) const {
    require(omega_radius > 0, "domain: omega_radius must be positive");
    require(omega_radius < ball_radius, "domain: omega_radius must be < ball_radius");
    double margin = 2.0 * g.spacing();
    require(ball_radius < 0.5 * g.length - margin,
            "domain: ball must fit in the box with a 2-cell margin");
  }
};

}  // namespace pcgo
