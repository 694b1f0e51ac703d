#include "usfdtd/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace usfdtd {

namespace {

constexpr char kMagic[8] = {'U', 'S', 'F', 'D', 'T', 'D', 'S', 'N'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kNoScheme = 0xffffffffu;

template <class U>
void put(std::ostream& os, U v) {
  std::array<char, sizeof(U)> b{};
  for (std::size_t n = 0; n < sizeof(U); ++n) b[n] = static_cast<char>((v >> (8 * n)) & 0xffu);
  os.write(b.data(), b.size());
}

void put_f64(std::ostream& os, double x) { put(os, std::bit_cast<std::uint64_t>(x)); }

template <class U>
U get(std::istream& is) {
  std::array<unsigned char, sizeof(U)> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw SnapshotError("snapshot truncated");
  }
  U v = 0;
  for (std::size_t n = 0; n < sizeof(U); ++n) v |= static_cast<U>(b[n]) << (8 * n);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get<std::uint64_t>(is)); }

void put_set(std::ostream& os, const FieldSet& f) {
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.scaling));
  for (Component c : kComponents) {
    for (double x : f[c].values()) put_f64(os, x);
  }
}

FieldSet get_set(std::istream& is, const YeeGrid& grid) {
  const auto tag = get<std::uint32_t>(is);
  if (tag > 1) throw SnapshotError("snapshot has an unknown scaling tag");
  FieldSet f(grid, static_cast<Scaling>(tag));
  for (Component c : kComponents) {
    for (double& x : f[c].values()) x = get_f64(is);
  }
  return f;
}

}  // namespace

Snapshot capture(const Stepper& stepper, MagneticUpdate magnetic) {
  Snapshot s;
  s.fields = stepper.output();
  s.step = stepper.step_index();
  s.scheme = stepper.scheme();
  s.formulation = stepper.formulation();
  s.magnetic = magnetic;
  s.state = stepper.checkpoint();
  return s;
}

void write_snapshot(std::ostream& os, const Snapshot& s) {
  const YeeGrid& g = s.fields.grid();
  os.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(os, kVersion);
  put<std::uint64_t>(os, g.nx);
  put<std::uint64_t>(os, g.ny);
  put<std::uint64_t>(os, g.nz);
  put_f64(os, g.dx);
  put_f64(os, g.dy);
  put_f64(os, g.dz);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(s.step));
  put<std::uint32_t>(os, s.scheme ? static_cast<std::uint32_t>(*s.scheme) : kNoScheme);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(s.formulation));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(s.magnetic));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(1 + s.state.size()));
  put_set(os, s.fields);
  for (const FieldSet& f : s.state) {
    if (!(f.grid() == g)) throw SnapshotError("state set on a different grid");
    put_set(os, f);
  }
  if (!os) throw SnapshotError("snapshot write failed");
}

Snapshot read_snapshot(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw SnapshotError("not a snapshot file");
  }
  if (get<std::uint32_t>(is) != kVersion) throw SnapshotError("unsupported snapshot version");
  const auto nx = get<std::uint64_t>(is);
  const auto ny = get<std::uint64_t>(is);
  const auto nz = get<std::uint64_t>(is);
  const double dx = get_f64(is);
  const double dy = get_f64(is);
  const double dz = get_f64(is);
  const YeeGrid grid(nx, ny, nz, dx, dy, dz);
  Snapshot s;
  s.step = static_cast<long>(get<std::uint64_t>(is));
  const auto scheme = get<std::uint32_t>(is);
  const auto form = get<std::uint32_t>(is);
  const auto magnetic = get<std::uint32_t>(is);
  const auto sets = get<std::uint32_t>(is);
  if (scheme != kNoScheme) {
    if (scheme >= kSchemes.size()) throw SnapshotError("snapshot has an unknown scheme tag");
    s.scheme = static_cast<SchemeId>(scheme);
  }
  if (form > 1 || magnetic > 1) throw SnapshotError("snapshot has an unknown stepper tag");
  if (sets == 0 || sets > 16) throw SnapshotError("snapshot has an invalid set count");
  s.formulation = static_cast<Formulation>(form);
  s.magnetic = static_cast<MagneticUpdate>(magnetic);
  s.fields = get_set(is, grid);
  for (std::uint32_t n = 1; n < sets; ++n) s.state.push_back(get_set(is, grid));
  return s;
}

void save_snapshot(const std::string& path, const Snapshot& s) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw SnapshotError("cannot open '" + path + "' for writing");
  write_snapshot(os, s);
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot open '" + path + "'");
  return read_snapshot(is);
}

}  // namespace usfdtd
