#include "usfdtd/grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace usfdtd {

const char* to_string(Axis a) {
  switch (a) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "?";
}

Extent3 Extent3::resized(Axis a, long delta) const {
  Extent3 out = *this;
  const long n = static_cast<long>(out[a]) + delta;
  if (n < 0) throw DimensionError("extent along axis " + std::string(to_string(a)) + " would be negative");
  out[a] = static_cast<std::size_t>(n);
  return out;
}

void Array3::fill(double v) {
  for (double& x : data_) x = v;
}

YeeGrid::YeeGrid(std::size_t nx_, std::size_t ny_, std::size_t nz_, double dx_, double dy_,
                 double dz_)
    : nx(nx_), ny(ny_), nz(nz_), dx(dx_), dy(dy_), dz(dz_) {
  if (nx < 3 || ny < 3 || nz < 3) {
    throw DimensionError("YeeGrid needs at least 3 cells per axis, got " + std::to_string(nx) +
                         "x" + std::to_string(ny) + "x" + std::to_string(nz));
  }
  if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0)) {
    throw std::invalid_argument("YeeGrid spacings must be positive");
  }
}

Medium::Medium(double epsilon_, double mu_) : epsilon(epsilon_), mu(mu_) {
  if (!(epsilon > 0.0) || !(mu > 0.0)) {
    throw std::invalid_argument("Medium needs epsilon > 0 and mu > 0");
  }
}

Medium Medium::vacuum() { return Medium(8.8541878128e-12, 1.25663706212e-6); }

double Medium::light_speed() const { return 1.0 / std::sqrt(epsilon * mu); }

double Medium::impedance() const { return std::sqrt(mu / epsilon); }

double explicit_time_limit(const YeeGrid& grid, const Medium& medium) {
  const double s = std::sqrt(1.0 / (grid.dx * grid.dx) + 1.0 / (grid.dy * grid.dy) +
                             1.0 / (grid.dz * grid.dz));
  return 1.0 / (medium.light_speed() * s);
}

TimeConfig TimeConfig::from_dt(double dt, const YeeGrid& grid, const Medium& medium) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  return {dt, dt / explicit_time_limit(grid, medium)};
}

TimeConfig TimeConfig::from_cfl(double cfl, const YeeGrid& grid, const Medium& medium) {
  if (!(cfl > 0.0)) throw std::invalid_argument("cfl number must be positive");
  return {cfl * explicit_time_limit(grid, medium), cfl};
}

Coefficients Coefficients::from(double dt, const Medium& medium) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  return {dt / (2.0 * medium.epsilon), dt / (2.0 * medium.mu)};
}

const char* to_string(Component c) {
  static constexpr const char* names[] = {"Ex", "Ey", "Ez", "Hx", "Hy", "Hz"};
  return names[index_of(c)];
}

Component parse_component(std::string_view name) {
  for (Component c : kComponents) {
    if (name == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown field component '" + std::string(name) + "'");
}

Extent3 component_extent(const YeeGrid& grid, Component c) {
  const Extent3 cells{grid.nx, grid.ny, grid.nz};
  const Axis dir = direction_of(c);
  Extent3 e = cells;
  if (is_electric(c)) {
    // Tangential to both walls normal to the other two axes.
    for (Axis a : kAxes) {
      if (a != dir) e[a] = cells[a] - 1;
    }
  } else {
    // Normal component on the walls of its own axis.
    e[dir] = cells[dir] - 1;
  }
  return e;
}

std::array<double, 3> sample_position(const YeeGrid& grid, Component c, const Index3& at) {
  const Axis dir = direction_of(c);
  std::array<double, 3> x{};
  for (Axis a : kAxes) {
    // Half-integer along E's own axis and across H's; stored index 0 sits
    // one sample in from the wall otherwise.
    const bool half = (a == dir) == is_electric(c);
    const double offset = half ? 0.5 : 1.0;
    x[index_of(a)] = (static_cast<double>(at[a]) + offset) * grid.spacing(a);
  }
  return x;
}

ComponentArrays::ComponentArrays(const YeeGrid& grid) : grid_(grid) {
  for (Component c : kComponents) arrays_[index_of(c)] = Array3(component_extent(grid, c));
}

std::size_t ComponentArrays::unknowns() const {
  std::size_t n = 0;
  for (const auto& a : arrays_) n += a.size();
  return n;
}

void ComponentArrays::fill(double v) {
  for (auto& a : arrays_) a.fill(v);
}

bool ComponentArrays::all_finite() const {
  for (const auto& a : arrays_) {
    for (double x : a.values()) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

void ComponentArrays::axpy(double alpha, const ComponentArrays& other) {
  for (std::size_t c = 0; c < arrays_.size(); ++c) {
    auto dst = arrays_[c].values();
    auto src = other.arrays_[c].values();
    if (dst.size() != src.size()) throw DimensionError("axpy: mismatched component sizes");
    for (std::size_t n = 0; n < dst.size(); ++n) dst[n] += alpha * src[n];
  }
}

void ComponentArrays::scale(double alpha) {
  for (auto& a : arrays_) {
    for (double& x : a.values()) x *= alpha;
  }
}

FieldSet random_fields(const YeeGrid& grid, std::uint64_t seed) {
  FieldSet u(grid);
  std::mt19937_64 rng(seed);
  for (Component c : kComponents) {
    for (double& x : u[c].values()) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x = 2.0 * unit - 1.0;
    }
  }
  return u;
}

namespace {

double weighted_sum_sq(const ComponentArrays& u, const Medium& m) {
  double se = 0.0;
  double sh = 0.0;
  for (Component c : kElectric) {
    for (double x : u[c].values()) se += x * x;
  }
  for (Component c : kMagnetic) {
    for (double x : u[c].values()) sh += x * x;
  }
  return m.epsilon * se + m.mu * sh;
}

}  // namespace

double energy(const ComponentArrays& u, const Medium& medium) {
  return weighted_sum_sq(u, medium) * u.grid().cell_volume();
}

double weighted_norm(const ComponentArrays& u, const Medium& medium) {
  return std::sqrt(weighted_sum_sq(u, medium));
}

double relative_difference(const ComponentArrays& a, const ComponentArrays& b,
                           const Medium& medium) {
  ComponentArrays diff = a;
  diff.axpy(-1.0, b);
  const double num = weighted_norm(diff, medium);
  const double den = weighted_norm(a, medium);
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

FieldSet to_physical(const FieldSet& u) {
  FieldSet out = u;
  if (u.scaling == Scaling::doubled) {
    out.scale(0.5);
    out.scaling = Scaling::physical;
  }
  return out;
}

}  // namespace usfdtd
