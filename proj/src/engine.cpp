#include "engine.hpp"

#include <stdexcept>
#include <string>

namespace usfdtd::detail {

namespace {

struct Point {
  std::size_t i, j, k;
};

Point step_up(Axis a, std::size_t i, std::size_t j, std::size_t k) {
  switch (a) {
    case Axis::x:
      return {i + 1, j, k};
    case Axis::y:
      return {i, j + 1, k};
    case Axis::z:
      return {i, j, k + 1};
  }
  return {i, j, k};
}

}  // namespace

template <class T>
SplitEngine<T>::SplitEngine(const Problem& problem, int threads)
    : problem_(problem), threads_(threads < 1 ? 1 : threads) {}

template <class T>
const TridiagFactorization& SplitEngine<T>::line_system(Axis axis, double diagonal,
                                                        double coupling) {
  for (const CachedSystem& s : systems_) {
    if (s.axis == axis && s.diagonal == diagonal && s.coupling == coupling) return s.factors;
  }
  systems_.push_back(
      {axis, diagonal, coupling, build_line_system(axis, diagonal, coupling, problem_.grid)});
  return systems_.back().factors;
}

template <class T>
template <class Rhs>
void SplitEngine<T>::solve_lines(Array3& dst, Axis axis, const TridiagFactorization& f,
                                 flops::Tally& tally, Rhs&& rhs) {
  const Extent3 ext = dst.extent();
  const std::size_t n = f.n;
  if (ext[axis] != n) {
    throw DimensionError("line system of order " + std::to_string(n) +
                         " does not match array extent along " + to_string(axis));
  }
  ledger_.lines += ext.volume() / n;
  ledger_.line_unknowns += ext.volume();

  flops::Tally& st = ledger_.solve;
  const double* lower = f.lower.data();
  const double* upper = f.upper.data();
  const double* dinv = f.diag_inv.data();
  double* base = dst.data();

  if (axis == Axis::z) {
    parallel_for(ext.n0, threads_, [&](std::size_t i) {
      for (std::size_t j = 0; j < ext.n1; ++j) {
        double* line = base + dst.flat(i, j, 0);
        T prev{};
        for (std::size_t k = 0; k < n; ++k) {
          T r;
          {
            flops::Scope<T> s(tally);
            r = rhs(i, j, k);
          }
          if (k == 0) {
            prev = r;
          } else {
            flops::Scope<T> s(st);
            prev = r - T(lower[k - 1]) * prev;
          }
          line[k] = value_of(prev);
        }
        flops::Scope<T> s(st);
        T next = prev * T(dinv[n - 1]);
        line[n - 1] = value_of(next);
        for (std::size_t k = n - 1; k-- > 0;) {
          next = (T(line[k]) - T(upper[k]) * next) * T(dinv[k]);
          line[k] = value_of(next);
        }
      }
    });
    return;
  }

  // Lines along x or y: sweep whole rows of contiguous k at once.
  const std::size_t rs = dst.stride(axis);
  const std::size_t outer = axis == Axis::y ? ext.n0 : ext.n1;
  const std::size_t inner = ext.n2;
  parallel_for(outer, threads_, [&](std::size_t o) {
    auto row_of = [&](std::size_t m) {
      return axis == Axis::y ? base + dst.flat(o, m, 0) : base + dst.flat(m, o, 0);
    };
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t i = axis == Axis::y ? o : m;
      const std::size_t j = axis == Axis::y ? m : o;
      double* row = row_of(m);
      for (std::size_t k = 0; k < inner; ++k) {
        T r;
        {
          flops::Scope<T> s(tally);
          r = rhs(i, j, k);
        }
        if (m == 0) {
          row[k] = value_of(r);
        } else {
          flops::Scope<T> s(st);
          row[k] = value_of(r - T(lower[m - 1]) * T((row - rs)[k]));
        }
      }
    }
    flops::Scope<T> s(st);
    double* last = row_of(n - 1);
    for (std::size_t k = 0; k < inner; ++k) last[k] = value_of(T(last[k]) * T(dinv[n - 1]));
    for (std::size_t m = n - 1; m-- > 0;) {
      double* row = row_of(m);
      const double* next = row + rs;
      for (std::size_t k = 0; k < inner; ++k) {
        row[k] = value_of((T(row[k]) - T(upper[m]) * T(next[k])) * T(dinv[m]));
      }
    }
  });
}

template <class T>
template <class Fn>
void SplitEngine<T>::for_points(Array3& dst, flops::Tally& tally, Fn&& fn) {
  const Extent3 ext = dst.extent();
  parallel_for(ext.n0, threads_, [&](std::size_t i) {
    flops::Scope<T> s(tally);
    for (std::size_t j = 0; j < ext.n1; ++j) {
      double* row = dst.data() + dst.flat(i, j, 0);
      for (std::size_t k = 0; k < ext.n2; ++k) row[k] = value_of(fn(i, j, k));
    }
  });
}

template <class T>
void SplitEngine<T>::original(SplitOperator x, Cross cross, double theta,
                              const ComponentArrays& src, ComponentArrays& dst) {
  if (&src == &dst && cross != Cross::none) {
    throw std::logic_error("in-place original procedure requires a plain right-hand side");
  }
  const YeeGrid& g = problem_.grid;
  const double beta = theta / problem_.medium.epsilon;
  const double dlt = theta / problem_.medium.mu;
  const SplitOperator y = other(x);

  // Implicit electric updates along each coupling axis.
  for (const Coupling& cx : couplings(x)) {
    const Axis ax = cx.axis;
    const double h = g.spacing(ax);
    const TridiagFactorization& f = line_system(ax, 1.0, beta * dlt);
    const Array3& se = src[cx.e];
    const Array3& sh = src[cx.h];
    flops::Tally& tally = ledger_.update[index_of(cx.e)];
    const double cb = cx.sign * beta / h;

    switch (cross) {
      case Cross::same: {
        const double c2 = beta * dlt / (h * h);
        const double c0 = 1.0 - 2.0 * c2;
        const double c1 = 2.0 * cb;
        solve_lines(dst[cx.e], ax, f, tally, [&](std::size_t i, std::size_t j, std::size_t k) {
          return T(c0) * T(se(i, j, k)) +
                 T(c2) * (T(neighbour(se, ax, i, j, k, +1)) + T(neighbour(se, ax, i, j, k, -1))) +
                 T(c1) * hdiff<T>(sh, ax, i, j, k);
        });
        break;
      }
      case Cross::other: {
        const Coupling& cy = coupling_of(y, cx.e);
        const Coupling& cyh = coupling_of(y, cx.h);
        const Array3& hy = src[cy.h];
        const Array3& e2 = src[cyh.e];
        const double c_y = cy.sign * beta / g.spacing(cy.axis);
        const double c_m = cx.sign * cyh.sign * beta * dlt / (h * g.spacing(cyh.axis));
        solve_lines(dst[cx.e], ax, f, tally, [&](std::size_t i, std::size_t j, std::size_t k) {
          const Point up = step_up(ax, i, j, k);
          const T mixed = ediff<T>(e2, cyh.axis, up.i, up.j, up.k) - ediff<T>(e2, cyh.axis, i, j, k);
          return T(se(i, j, k)) + T(c_y) * hdiff<T>(hy, cy.axis, i, j, k) +
                 T(cb) * hdiff<T>(sh, ax, i, j, k) + T(c_m) * mixed;
        });
        break;
      }
      case Cross::none: {
        solve_lines(dst[cx.e], ax, f, tally, [&](std::size_t i, std::size_t j, std::size_t k) {
          return T(se(i, j, k)) + T(cb) * hdiff<T>(sh, ax, i, j, k);
        });
        break;
      }
    }
  }

  // Explicit magnetic updates from the new electric field.
  for (const Coupling& cx : couplings(x)) {
    const Axis ax = cx.axis;
    const double cd = cx.sign * dlt / g.spacing(ax);
    const Array3& sh = src[cx.h];
    const Array3& new_e = dst[cx.e];
    const Array3& old_e = src[cx.e];
    flops::Tally& tally = ledger_.update[index_of(cx.h)];
    switch (cross) {
      case Cross::same:
        for_points(dst[cx.h], tally, [&](std::size_t i, std::size_t j, std::size_t k) {
          return T(sh(i, j, k)) +
                 T(cd) * (ediff<T>(new_e, ax, i, j, k) + ediff<T>(old_e, ax, i, j, k));
        });
        break;
      case Cross::other: {
        const Coupling& cyh = coupling_of(y, cx.h);
        const Array3& e2 = src[cyh.e];
        const double c2 = cyh.sign * dlt / g.spacing(cyh.axis);
        for_points(dst[cx.h], tally, [&](std::size_t i, std::size_t j, std::size_t k) {
          return T(sh(i, j, k)) + T(cd) * ediff<T>(new_e, ax, i, j, k) +
                 T(c2) * ediff<T>(e2, cyh.axis, i, j, k);
        });
        break;
      }
      case Cross::none:
        for_points(dst[cx.h], tally, [&](std::size_t i, std::size_t j, std::size_t k) {
          return T(sh(i, j, k)) + T(cd) * ediff<T>(new_e, ax, i, j, k);
        });
        break;
    }
  }
}

template <class T>
void SplitEngine<T>::lod_fundamental(SplitOperator x, double theta, const ComponentArrays& src,
                                     ComponentArrays& dst, MagneticUpdate mode) {
  if (&src == &dst) throw std::logic_error("fundamental LOD procedure cannot run in place");
  const YeeGrid& g = problem_.grid;
  const double beta = theta / problem_.medium.epsilon;
  const double dlt = theta / problem_.medium.mu;

  for (const Coupling& cx : couplings(x)) {
    const Axis ax = cx.axis;
    const TridiagFactorization& f = line_system(ax, 0.5, 0.5 * beta * dlt);
    const Array3& se = src[cx.e];
    const Array3& sh = src[cx.h];
    const double cb = cx.sign * beta / g.spacing(ax);
    solve_lines(dst[cx.e], ax, f, ledger_.update[index_of(cx.e)],
                [&](std::size_t i, std::size_t j, std::size_t k) {
                  return T(se(i, j, k)) + T(cb) * hdiff<T>(sh, ax, i, j, k);
                });
  }

  for (const Coupling& cx : couplings(x)) {
    const Axis ax = cx.axis;
    const double cd = cx.sign * dlt / g.spacing(ax);
    const Array3& sh = src[cx.h];
    const Array3& aux_e = dst[cx.e];
    Array3& dh = dst[cx.h];
    flops::Tally& tally = ledger_.update[index_of(cx.h)];
    if (mode == MagneticUpdate::combined) {
      for_points(dh, tally, [&](std::size_t i, std::size_t j, std::size_t k) {
        return T(sh(i, j, k)) + T(cd) * ediff<T>(aux_e, ax, i, j, k);
      });
    } else {
      for_points(dh, tally, [&](std::size_t i, std::size_t j, std::size_t k) {
        return T(2.0) * T(sh(i, j, k)) + T(cd) * ediff<T>(aux_e, ax, i, j, k);
      });
      for_points(dh, tally, [&](std::size_t i, std::size_t j, std::size_t k) {
        return T(dh(i, j, k)) - T(sh(i, j, k));
      });
    }
  }

  for (const Coupling& cx : couplings(x)) {
    Array3& de = dst[cx.e];
    const Array3& se = src[cx.e];
    for_points(de, ledger_.update[index_of(cx.e)],
               [&](std::size_t i, std::size_t j, std::size_t k) {
                 return T(de(i, j, k)) - T(se(i, j, k));
               });
  }
}

template <class T>
void SplitEngine<T>::adi_fundamental(SplitOperator x, double theta, ComponentArrays& field,
                                     ComponentArrays& aux, ComponentArrays* combined_h) {
  if (&field == &aux) throw std::logic_error("field and auxiliary storage must differ");
  const YeeGrid& g = problem_.grid;
  const double beta = theta / problem_.medium.epsilon;
  const double dlt = theta / problem_.medium.mu;

  if (combined_h == nullptr) {
    // h^n = H~^n - h^{n-1/2}, kept in the field slot.
    for (const Coupling& cx : couplings(x)) {
      Array3& fh = field[cx.h];
      const Array3& vh = aux[cx.h];
      for_points(fh, ledger_.update[index_of(cx.h)],
                 [&](std::size_t i, std::size_t j, std::size_t k) {
                   return T(fh(i, j, k)) - T(vh(i, j, k));
                 });
    }
  }

  for (const Coupling& cx : couplings(x)) {
    const Axis ax = cx.axis;
    const TridiagFactorization& f = line_system(ax, 0.5, 0.5 * beta * dlt);
    const Array3& hsrc = combined_h ? (*combined_h)[cx.h] : field[cx.h];
    Array3& fe = field[cx.e];
    Array3& ve = aux[cx.e];
    const double cb = cx.sign * beta / g.spacing(ax);
    solve_lines(ve, ax, f, ledger_.update[index_of(cx.e)],
                [&](std::size_t i, std::size_t j, std::size_t k) {
                  const T v = T(fe(i, j, k)) - T(ve(i, j, k));
                  fe(i, j, k) = value_of(v);
                  return v + T(cb) * hdiff<T>(hsrc, ax, i, j, k);
                });
  }

  for (const Coupling& cx : couplings(x)) {
    const Axis ax = cx.axis;
    const double cd = cx.sign * dlt / g.spacing(ax);
    const Array3& new_e = aux[cx.e];
    flops::Tally& tally = ledger_.update[index_of(cx.h)];
    if (combined_h) {
      Array3& hh = (*combined_h)[cx.h];
      for_points(hh, tally, [&](std::size_t i, std::size_t j, std::size_t k) {
        return T(hh(i, j, k)) + T(cd) * ediff<T>(new_e, ax, i, j, k);
      });
    } else {
      const Array3& fh = field[cx.h];
      for_points(aux[cx.h], tally, [&](std::size_t i, std::size_t j, std::size_t k) {
        return T(2.0) * T(fh(i, j, k)) + T(cd) * ediff<T>(new_e, ax, i, j, k);
      });
    }
  }
}

template <class T>
void SplitEngine<T>::shift(SplitOperator y, double theta, const ComponentArrays& src,
                           ComponentArrays& dst) {
  if (&src == &dst) throw std::logic_error("shift cannot run in place");
  const YeeGrid& g = problem_.grid;
  const double beta = theta / problem_.medium.epsilon;
  const double dlt = theta / problem_.medium.mu;
  for (const Coupling& c : couplings(y)) {
    const double h = g.spacing(c.axis);
    const double cb = c.sign * beta / h;
    const double cd = c.sign * dlt / h;
    const Array3& se = src[c.e];
    const Array3& sh = src[c.h];
    for_points(dst[c.e], ledger_.update[index_of(c.e)],
               [&](std::size_t i, std::size_t j, std::size_t k) {
                 return T(se(i, j, k)) + T(cb) * hdiff<T>(sh, c.axis, i, j, k);
               });
    for_points(dst[c.h], ledger_.update[index_of(c.h)],
               [&](std::size_t i, std::size_t j, std::size_t k) {
                 return T(sh(i, j, k)) + T(cd) * ediff<T>(se, c.axis, i, j, k);
               });
  }
}

template <class T>
void SplitEngine<T>::curl_scaled(double scale, const ComponentArrays& src, ComponentArrays& dst) {
  if (&src == &dst) throw std::logic_error("curl_scaled cannot run in place");
  const YeeGrid& g = problem_.grid;
  const double ke = scale / problem_.medium.epsilon;
  const double kh = scale / problem_.medium.mu;
  for (Component c : kComponents) {
    const Coupling& ca = coupling_of(SplitOperator::A, c);
    const Coupling& cb = coupling_of(SplitOperator::B, c);
    if (is_electric(c)) {
      const double wa = ca.sign * ke / g.spacing(ca.axis);
      const double wb = cb.sign * ke / g.spacing(cb.axis);
      const Array3& ha = src[ca.h];
      const Array3& hb = src[cb.h];
      for_points(dst[c], ledger_.update[index_of(c)],
                 [&](std::size_t i, std::size_t j, std::size_t k) {
                   return T(wa) * hdiff<T>(ha, ca.axis, i, j, k) +
                          T(wb) * hdiff<T>(hb, cb.axis, i, j, k);
                 });
    } else {
      const double wa = ca.sign * kh / g.spacing(ca.axis);
      const double wb = cb.sign * kh / g.spacing(cb.axis);
      const Array3& ea = src[ca.e];
      const Array3& eb = src[cb.e];
      for_points(dst[c], ledger_.update[index_of(c)],
                 [&](std::size_t i, std::size_t j, std::size_t k) {
                   return T(wa) * ediff<T>(ea, ca.axis, i, j, k) +
                          T(wb) * ediff<T>(eb, cb.axis, i, j, k);
                 });
    }
  }
}

template class SplitEngine<double>;
template class SplitEngine<CountedReal>;

}  // namespace usfdtd::detail
