#pragma once

// Component-level split-step kernels shared by every finite-difference
// stepper. Templated on the arithmetic scalar so the same code runs either
// on plain doubles or on CountedReal for the flop audit.

#include <cstddef>
#include <vector>

#include "usfdtd/counted.hpp"
#include "usfdtd/grid.hpp"
#include "usfdtd/operators.hpp"
#include "usfdtd/schemes.hpp"
#include "usfdtd/tridiag.hpp"

namespace usfdtd::detail {

/// Which right-hand side accompanies an original-form implicit procedure
/// (I - theta X) u' = rhs.
enum class Cross {
  same,   ///< rhs = (I + theta X) u       (LOD, split-step)
  other,  ///< rhs = (I + theta Y) u, Y!=X (Peaceman-Rachford ADI)
  none,   ///< rhs = u                      (second factor of D'Yakonov, delta form)
};

template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
  for (long long t = 0; t < count; ++t) body(static_cast<std::size_t>(t));
}

inline std::size_t coord(Axis a, std::size_t i, std::size_t j, std::size_t k) {
  return a == Axis::x ? i : (a == Axis::y ? j : k);
}

// h(p + e_a) - h(p): magnetic difference evaluated at electric point p.
template <class T>
inline T hdiff(const Array3& h, Axis a, std::size_t i, std::size_t j, std::size_t k) {
  const double* q = h.data() + h.flat(i, j, k);
  return T(q[h.stride(a)]) - T(q[0]);
}

// e(p) - e(p - e_a) at magnetic point p; e has one sample fewer along a and
// reads zero past either wall.
template <class T>
inline T ediff(const Array3& e, Axis a, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t m = coord(a, i, j, k);
  const std::size_t idx = e.flat(i, j, k);
  const double hi = m < e.extent()[a] ? e.data()[idx] : 0.0;
  const double lo = m > 0 ? e.data()[idx - e.stride(a)] : 0.0;
  return T(hi) - T(lo);
}

// e(p +/- e_a) with zero past the walls.
inline double neighbour(const Array3& e, Axis a, std::size_t i, std::size_t j, std::size_t k,
                        int offset) {
  const std::size_t m = coord(a, i, j, k);
  if (offset < 0 && m == 0) return 0.0;
  if (offset > 0 && m + 1 >= e.extent()[a]) return 0.0;
  const std::size_t idx = e.flat(i, j, k);
  return offset > 0 ? e.data()[idx + e.stride(a)] : e.data()[idx - e.stride(a)];
}

template <class T>
class SplitEngine {
 public:
  SplitEngine(const Problem& problem, int threads);

  FlopLedger& ledger() { return ledger_; }
  const FlopLedger& ledger() const { return ledger_; }
  const Problem& problem() const { return problem_; }

  /// (I - theta X) dst = rhs(src). dst may alias src only for Cross::none.
  void original(SplitOperator x, Cross cross, double theta, const ComponentArrays& src,
                ComponentArrays& dst);

  /// (1/2 I - theta/2 X) v = src, dst = v - src.
  void lod_fundamental(SplitOperator x, double theta, const ComponentArrays& src,
                       ComponentArrays& dst, MagneticUpdate mode);

  /// aux <- field - aux, then (1/2 I - theta/2 X) aux = old aux. On return
  /// `field` holds the new auxiliary vector and `aux` the new field, so the
  /// caller swaps roles. With `combined_h` the magnetic unknowns are the
  /// auxiliary h stored in combined_h's magnetic slots, advanced in place.
  void adi_fundamental(SplitOperator x, double theta, ComponentArrays& field,
                       ComponentArrays& aux, ComponentArrays* combined_h);

  /// dst = (I + theta Y) src.
  void shift(SplitOperator y, double theta, const ComponentArrays& src, ComponentArrays& dst);

  /// dst = scale * (A + B) src.
  void curl_scaled(double scale, const ComponentArrays& src, ComponentArrays& dst);

 private:
  const TridiagFactorization& line_system(Axis axis, double diagonal, double coupling);

  template <class Rhs>
  void solve_lines(Array3& dst, Axis axis, const TridiagFactorization& f, flops::Tally& tally,
                   Rhs&& rhs);

  template <class Fn>
  void for_points(Array3& dst, flops::Tally& tally, Fn&& fn);

  struct CachedSystem {
    Axis axis;
    double diagonal;
    double coupling;
    TridiagFactorization factors;
  };

  Problem problem_;
  int threads_;
  FlopLedger ledger_;
  std::vector<CachedSystem> systems_;
};

}  // namespace usfdtd::detail
