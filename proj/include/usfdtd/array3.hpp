#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace usfdtd {

enum class Axis : int { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

constexpr int index_of(Axis a) { return static_cast<int>(a); }

const char* to_string(Axis a);

/// Thrown when array shapes or axis extents do not support an operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Extent3 {
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;

  std::size_t operator[](Axis a) const { return a == Axis::x ? n0 : (a == Axis::y ? n1 : n2); }
  std::size_t& operator[](Axis a) { return a == Axis::x ? n0 : (a == Axis::y ? n1 : n2); }
  std::size_t volume() const { return n0 * n1 * n2; }

  /// Same extent with the given axis grown (delta > 0) or shrunk (delta < 0).
  Extent3 resized(Axis a, long delta) const;

  friend bool operator==(const Extent3&, const Extent3&) = default;
};

struct Index3 {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  std::size_t operator[](Axis a) const { return a == Axis::x ? i : (a == Axis::y ? j : k); }
  friend bool operator==(const Index3&, const Index3&) = default;
};

/// Dense 3-D array of doubles in row-major (k fastest) order.
class Array3 {
 public:
  Array3() = default;
  explicit Array3(Extent3 extent, double fill = 0.0)
      : extent_(extent), data_(extent.volume(), fill) {}

  const Extent3& extent() const { return extent_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t stride(Axis a) const {
    switch (a) {
      case Axis::x:
        return extent_.n1 * extent_.n2;
      case Axis::y:
        return extent_.n2;
      case Axis::z:
        return 1;
    }
    return 0;
  }

  std::size_t flat(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * extent_.n1 + j) * extent_.n2 + k;
  }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[flat(i, j, k)]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[flat(i, j, k)];
  }
  double& operator[](const Index3& p) { return (*this)(p.i, p.j, p.k); }
  double operator[](const Index3& p) const { return (*this)(p.i, p.j, p.k); }

  bool contains(const Index3& p) const {
    return p.i < extent_.n0 && p.j < extent_.n1 && p.k < extent_.n2;
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void fill(double v);

  friend bool operator==(const Array3&, const Array3&) = default;

 private:
  Extent3 extent_{};
  std::vector<double> data_;
};

}  // namespace usfdtd
