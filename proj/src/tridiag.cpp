#include "usfdtd/tridiag.hpp"

#include <cmath>
#include <string>

namespace usfdtd {

std::vector<double> TridiagMatrix::multiply(std::span<const double> x) const {
  const std::size_t n = order();
  if (x.size() != n) throw DimensionError("tridiagonal multiply: length mismatch");
  std::vector<double> y(n);
  for (std::size_t m = 0; m < n; ++m) {
    double s = diag[m] * x[m];
    if (m > 0) s += sub[m - 1] * x[m - 1];
    if (m + 1 < n) s += sup[m] * x[m + 1];
    y[m] = s;
  }
  return y;
}

TridiagFactorization factorize(std::span<const double> diag, std::span<const double> sub,
                               std::span<const double> sup) {
  const std::size_t n = diag.size();
  if (n == 0) throw DimensionError("tridiagonal system of order 0");
  if (sub.size() != n - 1 || sup.size() != n - 1) {
    throw DimensionError("tridiagonal system: expected off-diagonals of length " +
                         std::to_string(n - 1));
  }
  TridiagFactorization f;
  f.n = n;
  f.lower.resize(n - 1);
  f.diag_inv.resize(n);
  f.upper.assign(sup.begin(), sup.end());

  double pivot = diag[0];
  for (std::size_t m = 0;; ++m) {
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SingularSystemError("zero pivot at row " + std::to_string(m));
    }
    f.diag_inv[m] = 1.0 / pivot;
    if (m + 1 == n) break;
    f.lower[m] = sub[m] * f.diag_inv[m];
    pivot = diag[m + 1] - f.lower[m] * sup[m];
  }
  return f;
}

std::vector<double> solve(const TridiagFactorization& f, std::span<const double> rhs) {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(f, x);
  return x;
}

void solve_in_place(const TridiagFactorization& f, std::span<double> x) {
  if (x.size() != f.n) {
    throw DimensionError("tridiagonal solve: rhs length " + std::to_string(x.size()) +
                         " != order " + std::to_string(f.n));
  }
  solve_strided<double>(f, x.data(), 1);
}

TridiagMatrix line_matrix(Axis axis, double diagonal, double coupling, const YeeGrid& grid) {
  const std::size_t n = grid.cells(axis) - 1;
  const double h = grid.spacing(axis);
  const double c = coupling / (h * h);
  TridiagMatrix m;
  m.diag.assign(n, diagonal + 2.0 * c);
  m.sub.assign(n - 1, -c);
  m.sup.assign(n - 1, -c);
  return m;
}

TridiagFactorization build_line_system(Axis axis, const Coefficients& coeffs,
                                       const YeeGrid& grid) {
  return build_line_system(axis, 0.5, 0.5 * coeffs.b * coeffs.d, grid);
}

TridiagFactorization build_line_system(Axis axis, double diagonal, double coupling,
                                       const YeeGrid& grid) {
  return factorize(line_matrix(axis, diagonal, coupling, grid));
}

}  // namespace usfdtd
