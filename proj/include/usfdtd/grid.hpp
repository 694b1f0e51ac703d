#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

#include "usfdtd/array3.hpp"

namespace usfdtd {

/// Cell counts and spacings of a uniform Yee mesh bounded by a PEC box.
///
/// Every component array holds only its interior unknowns: tangential E on
/// the box walls and normal H on the walls are fixed at zero and not stored.
struct YeeGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t nz = 0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  YeeGrid() = default;
  YeeGrid(std::size_t nx_, std::size_t ny_, std::size_t nz_, double dx_, double dy_, double dz_);

  /// Cubic mesh with n cells and spacing h per axis.
  static YeeGrid cube(std::size_t n, double h) { return YeeGrid(n, n, n, h, h, h); }

  std::size_t cells(Axis a) const { return a == Axis::x ? nx : (a == Axis::y ? ny : nz); }
  double spacing(Axis a) const { return a == Axis::x ? dx : (a == Axis::y ? dy : dz); }
  double cell_volume() const { return dx * dy * dz; }

  friend bool operator==(const YeeGrid&, const YeeGrid&) = default;
};

/// Lossless, isotropic, uniform medium.
struct Medium {
  double epsilon = 0.0;
  double mu = 0.0;

  Medium() = default;
  Medium(double epsilon_, double mu_);

  static Medium vacuum();
  static Medium normalized() { return Medium(1.0, 1.0); }

  double light_speed() const;
  double impedance() const;
};

/// Time step plus its ratio to the explicit Yee stability limit.
struct TimeConfig {
  double dt = 0.0;
  double cfl_number = 0.0;

  static TimeConfig from_dt(double dt, const YeeGrid& grid, const Medium& medium);
  static TimeConfig from_cfl(double cfl, const YeeGrid& grid, const Medium& medium);
};

/// Explicit Yee limit dt_CFL = 1 / (c sqrt(1/dx^2 + 1/dy^2 + 1/dz^2)).
double explicit_time_limit(const YeeGrid& grid, const Medium& medium);

/// b = dt/(2 eps), d = dt/(2 mu).
struct Coefficients {
  double b = 0.0;
  double d = 0.0;

  static Coefficients from(double dt, const Medium& medium);
};

/// Everything a stepper needs to know about the discrete problem.
struct Problem {
  YeeGrid grid;
  Medium medium;
  double dt = 0.0;

  Coefficients coefficients() const { return Coefficients::from(dt, medium); }
  double cfl_number() const { return TimeConfig::from_dt(dt, grid, medium).cfl_number; }
};

enum class Component : int { Ex = 0, Ey = 1, Ez = 2, Hx = 3, Hy = 4, Hz = 5 };

inline constexpr std::array<Component, 6> kComponents{Component::Ex, Component::Ey,
                                                       Component::Ez, Component::Hx,
                                                       Component::Hy, Component::Hz};
inline constexpr std::array<Component, 3> kElectric{Component::Ex, Component::Ey, Component::Ez};
inline constexpr std::array<Component, 3> kMagnetic{Component::Hx, Component::Hy, Component::Hz};

constexpr int index_of(Component c) { return static_cast<int>(c); }
constexpr bool is_electric(Component c) { return index_of(c) < 3; }

const char* to_string(Component c);
Component parse_component(std::string_view name);

/// Direction along which a component points (Ex -> x, Hz -> z, ...).
constexpr Axis direction_of(Component c) { return static_cast<Axis>(index_of(c) % 3); }

/// Interior unknown extent of one component under the PEC convention.
///
/// Ex lives at (i+1/2, j, k) and drops the j = 0, ny and k = 0, nz walls:
/// extent (nx, ny-1, nz-1). Hx lives at (i, j+1/2, k+1/2) and drops the
/// i = 0, nx walls: extent (nx-1, ny, nz). The others follow by symmetry.
Extent3 component_extent(const YeeGrid& grid, Component c);

/// Physical coordinates of sample `at` of component c, with the box corner
/// at the origin.
std::array<double, 3> sample_position(const YeeGrid& grid, Component c, const Index3& at);

/// Whether a set stores the physical fields u or the doubled fields 2u.
enum class Scaling : std::uint32_t { physical = 0, doubled = 1 };

/// Six arrays laid out per component_extent.
class ComponentArrays {
 public:
  ComponentArrays() = default;
  explicit ComponentArrays(const YeeGrid& grid);

  const YeeGrid& grid() const { return grid_; }

  Array3& operator[](Component c) { return arrays_[index_of(c)]; }
  const Array3& operator[](Component c) const { return arrays_[index_of(c)]; }

  std::size_t unknowns() const;
  void fill(double v);
  bool all_finite() const;

  /// this += alpha * other
  void axpy(double alpha, const ComponentArrays& other);
  void scale(double alpha);

  friend bool operator==(const ComponentArrays&, const ComponentArrays&) = default;

 private:
  YeeGrid grid_{};
  std::array<Array3, 6> arrays_{};
};

/// Fields u (physical) or u-tilde = 2u (doubled).
class FieldSet : public ComponentArrays {
 public:
  FieldSet() = default;
  explicit FieldSet(const YeeGrid& grid, Scaling s = Scaling::physical)
      : ComponentArrays(grid), scaling(s) {}

  Scaling scaling = Scaling::physical;

  friend bool operator==(const FieldSet&, const FieldSet&) = default;
};

/// Auxiliary variables v (e_x ... h_z), same staggering as FieldSet.
class AuxFieldSet : public ComponentArrays {
 public:
  AuxFieldSet() = default;
  explicit AuxFieldSet(const YeeGrid& grid) : ComponentArrays(grid) {}
};

/// Uniform random values in [-1, 1] on every component (deterministic in seed).
FieldSet random_fields(const YeeGrid& grid, std::uint64_t seed);

/// Discrete energy sum(eps |E|^2 + mu |H|^2) * cell volume.
double energy(const ComponentArrays& u, const Medium& medium);

/// Energy-weighted L2 norm, sqrt(sum(eps E^2 + mu H^2)).
double weighted_norm(const ComponentArrays& u, const Medium& medium);

/// ||a - b||_W / ||reference||_W, with reference = a. Zero when both vanish.
double relative_difference(const ComponentArrays& a, const ComponentArrays& b,
                           const Medium& medium);

/// Copy returning the physical fields (halves a doubled set).
FieldSet to_physical(const FieldSet& u);

}  // namespace usfdtd
