#pragma once

#include <cstdint>

namespace usfdtd::flops {

struct Tally {
  std::uint64_t md = 0;  ///< multiplications and divisions
  std::uint64_t as = 0;  ///< additions and subtractions

  std::uint64_t total() const { return md + as; }
  Tally& operator+=(const Tally& o) {
    md += o.md;
    as += o.as;
    return *this;
  }
  friend bool operator==(const Tally&, const Tally&) = default;
};

/// Tally receiving counts from CountedReal arithmetic on this thread.
inline thread_local Tally* active = nullptr;

/// Directs counts to `target` for the lifetime of the scope. A no-op unless
/// the kernel scalar is CountedReal, so production kernels carry no cost.
template <class T>
class Scope {
 public:
  explicit Scope(Tally&) {}
};

/// Double with every +, -, *, / recorded in flops::active.
class CountedReal {
 public:
  CountedReal() = default;
  CountedReal(double v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  double value() const { return v_; }

  friend CountedReal operator+(CountedReal a, CountedReal b) {
    bump_as();
    return a.v_ + b.v_;
  }
  friend CountedReal operator-(CountedReal a, CountedReal b) {
    bump_as();
    return a.v_ - b.v_;
  }
  friend CountedReal operator*(CountedReal a, CountedReal b) {
    bump_md();
    return a.v_ * b.v_;
  }
  friend CountedReal operator/(CountedReal a, CountedReal b) {
    bump_md();
    return a.v_ / b.v_;
  }
  // Sign flips are folded into stored coefficients and are not counted.
  CountedReal operator-() const { return CountedReal(-v_); }

 private:
  static void bump_md() {
    if (active) ++active->md;
  }
  static void bump_as() {
    if (active) ++active->as;
  }
  double v_ = 0.0;
};

template <>
class Scope<CountedReal> {
 public:
  explicit Scope(Tally& target) : saved_(active) { active = &target; }
  ~Scope() { active = saved_; }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  Tally* saved_;
};

}  // namespace usfdtd::flops

namespace usfdtd {

using flops::CountedReal;

inline double value_of(double x) { return x; }
inline double value_of(CountedReal x) { return x.value(); }

}  // namespace usfdtd
