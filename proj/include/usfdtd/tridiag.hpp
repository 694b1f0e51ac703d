#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "usfdtd/counted.hpp"
#include "usfdtd/grid.hpp"

namespace usfdtd {

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tridiagonal matrix: diag (n), sub (n-1, row m+1 col m), sup (n-1, row m col m+1).
struct TridiagMatrix {
  std::vector<double> diag;
  std::vector<double> sub;
  std::vector<double> sup;

  std::size_t order() const { return diag.size(); }
  std::vector<double> multiply(std::span<const double> x) const;
};

/// Thomas-algorithm LU factors with reciprocal pivots.
///
/// L is unit lower bidiagonal with multipliers `lower`; U has pivots
/// 1/diag_inv and superdiagonal `upper`. Immutable after construction.
struct TridiagFactorization {
  std::size_t n = 0;
  std::vector<double> lower;     // n-1 multipliers, lower[m] acts on row m+1
  std::vector<double> diag_inv;  // n reciprocal pivots
  std::vector<double> upper;     // n-1
};

TridiagFactorization factorize(std::span<const double> diag, std::span<const double> sub,
                               std::span<const double> sup);
inline TridiagFactorization factorize(const TridiagMatrix& m) {
  return factorize(m.diag, m.sub, m.sup);
}

/// Forward and backward substitution over a strided line, in place.
/// Costs 3n-2 multiplications and 2n-2 additions (5n-4 flops).
template <class T = double>
void solve_strided(const TridiagFactorization& f, double* x, std::size_t stride) {
  const std::size_t n = f.n;
  if (n == 0) return;
  T prev = x[0];
  for (std::size_t m = 1; m < n; ++m) {
    T y = T(x[m * stride]) - T(f.lower[m - 1]) * prev;
    x[m * stride] = value_of(y);
    prev = y;
  }
  T next = prev * T(f.diag_inv[n - 1]);
  x[(n - 1) * stride] = value_of(next);
  for (std::size_t m = n - 1; m-- > 0;) {
    next = (T(x[m * stride]) - T(f.upper[m]) * next) * T(f.diag_inv[m]);
    x[m * stride] = value_of(next);
  }
}

/// Solves f x = rhs.
std::vector<double> solve(const TridiagFactorization& f, std::span<const double> rhs);

/// In-place variant; `x` holds the right-hand side on entry.
void solve_in_place(const TridiagFactorization& f, std::span<double> x);

/// diagonal * I - coupling * d2, where d2 is the second difference with
/// Dirichlet ends on the interior E line along `axis` (cells(axis)-1 unknowns).
TridiagMatrix line_matrix(Axis axis, double diagonal, double coupling, const YeeGrid& grid);

/// (1/2) I - (b d / 2) d2 along `axis`, factorized once for reuse on every line.
TridiagFactorization build_line_system(Axis axis, const Coefficients& coeffs,
                                       const YeeGrid& grid);

/// diagonal * I - coupling * d2 along `axis`, factorized.
TridiagFactorization build_line_system(Axis axis, double diagonal, double coupling,
                                       const YeeGrid& grid);

}  // namespace usfdtd
