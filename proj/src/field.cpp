#include "pcgo/field.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "pcgo/errors.hpp"

namespace pcgo {

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require(grid == o.grid, "field: grid mismatch in +=");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  return *this;
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require(grid == o.grid, "field: grid mismatch in -=");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  return *this;
}
ScalarField& ScalarField::operator*=(cplx s) {
  for (auto& z : v) z *= s;
  return *this;
}
double ScalarField::max_abs() const {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}
double ScalarField::l2_lattice() const {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s * grid.cell_volume());
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(cplx s, ScalarField a) { return a *= s; }

double Spectrum::l2() const {
  double s = 0;
  for (const auto& z : c) s += std::norm(z);
  return std::sqrt(s * grid.volume());
}
Spectrum& Spectrum::operator+=(const Spectrum& o) {
  require(grid == o.grid, "spectrum: grid mismatch in +=");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}
Spectrum& Spectrum::operator-=(const Spectrum& o) {
  require(grid == o.grid, "spectrum: grid mismatch in -=");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}
Spectrum& Spectrum::operator*=(cplx s) {
  for (auto& z : c) z *= s;
  return *this;
}

// --- binary snapshots -------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'P', 'C', 'G', 'O'};
constexpr uint32_t kVersion = 1;

struct DumpHeader {
  char magic[4];
  uint32_t version;
  uint32_t dim;
  uint32_t points;
  double box_length;
  uint64_t manifest_tag;
  char pad[64 - 4 - 4 - 4 - 4 - 8 - 8];
};
static_assert(sizeof(DumpHeader) == 64, "dump header must be 64 bytes");
}  // namespace

void write_field_dump(const std::string& path, const ScalarField& f, uint64_t manifest_tag) {
  DumpHeader h{};
  std::memcpy(h.magic, kMagic, 4);
  h.version = kVersion;
  h.dim = static_cast<uint32_t>(f.grid.dim);
  h.points = static_cast<uint32_t>(f.grid.points);
  h.box_length = f.grid.length;
  h.manifest_tag = manifest_tag;
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "dump: cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(&h), sizeof(h));
  out.write(reinterpret_cast<const char*>(f.v.data()),
            static_cast<std::streamsize>(f.v.size() * sizeof(cplx)));
  require(out.good(), "dump: short write to " + path);
}

ScalarField read_field_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "dump: cannot open " + path);
  DumpHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  require(in.good() && std::memcmp(h.magic, kMagic, 4) == 0, "dump: bad magic in " + path);
  require(h.version == kVersion, "dump: unsupported version in " + path);
  ScalarField f(Grid(static_cast<int>(h.dim), static_cast<int>(h.points), h.box_length));
  in.read(reinterpret_cast<char*>(f.v.data()),
          static_cast<std::streamsize>(f.v.size() * sizeof(cplx)));
  require(in.good(), "dump: truncated payload in " + path);
  return f;
}

void write_field_csv(const std::string& path, const ScalarField& f, const std::string& comment) {
  std::ofstream out(path);
  require(out.good(), "csv: cannot open " + path + " for writing");
  if (!comment.empty()) out << "# " << comment << "\n";
  out << (f.grid.dim == 3 ? "x,y,z,re,im\n" : "x,y,re,im\n");
  out.precision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto x = f.grid.point(i);
    for (int a = 0; a < f.grid.dim; ++a) out << x[a] << ",";
    out << f.v[i].real() << "," << f.v[i].imag() << "\n";
  }
}

}  // namespace pcgo
