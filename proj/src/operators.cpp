#include "usfdtd/operators.hpp"

#include <string>

namespace usfdtd {

namespace {

double read_padded(const Array3& f, Index3 p, Axis axis, long offset) {
  const long m = static_cast<long>(p[axis]) + offset;
  if (m < 0 || m >= static_cast<long>(f.extent()[axis])) return 0.0;
  switch (axis) {
    case Axis::x:
      return f(static_cast<std::size_t>(m), p.j, p.k);
    case Axis::y:
      return f(p.i, static_cast<std::size_t>(m), p.k);
    case Axis::z:
      return f(p.i, p.j, static_cast<std::size_t>(m));
  }
  return 0.0;
}

// out[m] = (f[m + hi] - f[m + hi - 1]) / h, reading zeros outside f.
Array3 difference(const Array3& f, Axis axis, double h, Edges edges) {
  const std::size_t n = f.extent()[axis];
  long hi = 0;
  Extent3 out_extent;
  if (edges == Edges::open) {
    if (n < 2) {
      throw DimensionError("difference along " + std::string(to_string(axis)) +
                           " needs at least 2 samples, got " + std::to_string(n));
    }
    out_extent = f.extent().resized(axis, -1);
    hi = 1;
  } else {
    out_extent = f.extent().resized(axis, +1);
    hi = 0;
  }
  Array3 out(out_extent);
  const double inv_h = 1.0 / h;
  for (std::size_t i = 0; i < out_extent.n0; ++i) {
    for (std::size_t j = 0; j < out_extent.n1; ++j) {
      for (std::size_t k = 0; k < out_extent.n2; ++k) {
        const Index3 p{i, j, k};
        out(i, j, k) = (read_padded(f, p, axis, hi) - read_padded(f, p, axis, hi - 1)) * inv_h;
      }
    }
  }
  return out;
}

const std::array<Coupling, 3> kCouplingsA{{
    {Component::Ex, Component::Hz, Axis::y, +1},
    {Component::Ey, Component::Hx, Axis::z, +1},
    {Component::Ez, Component::Hy, Axis::x, +1},
}};

const std::array<Coupling, 3> kCouplingsB{{
    {Component::Ex, Component::Hy, Axis::z, -1},
    {Component::Ey, Component::Hz, Axis::x, -1},
    {Component::Ez, Component::Hx, Axis::y, -1},
}};

}  // namespace

Array3 diff_forward(const Array3& f, Axis axis, double h, Edges edges) {
  return difference(f, axis, h, edges);
}

Array3 diff_backward(const Array3& f, Axis axis, double h, Edges edges) {
  return difference(f, axis, h, edges);
}

const char* to_string(SplitOperator op) { return op == SplitOperator::A ? "A" : "B"; }

const std::array<Coupling, 3>& couplings(SplitOperator op) {
  return op == SplitOperator::A ? kCouplingsA : kCouplingsB;
}

const Coupling& coupling_of(SplitOperator op, Component c) {
  for (const Coupling& cp : couplings(op)) {
    if (cp.e == c || cp.h == c) return cp;
  }
  throw std::logic_error("component missing from split operator table");
}

FieldSet apply_split(SplitOperator op, const FieldSet& u, const Medium& medium) {
  const YeeGrid& g = u.grid();
  FieldSet out(g, u.scaling);
  for (const Coupling& cp : couplings(op)) {
    const double h = g.spacing(cp.axis);
    Array3 de = diff_backward(u[cp.h], cp.axis, h, Edges::open);
    Array3 dh = diff_forward(u[cp.e], cp.axis, h, Edges::zero);
    if (de.extent() != out[cp.e].extent() || dh.extent() != out[cp.h].extent()) {
      throw DimensionError("apply_split: field set does not match Yee staggering");
    }
    const double se = cp.sign / medium.epsilon;
    const double sh = cp.sign / medium.mu;
    auto oe = out[cp.e].values();
    auto oh = out[cp.h].values();
    auto ve = de.values();
    auto vh = dh.values();
    for (std::size_t n = 0; n < oe.size(); ++n) oe[n] = se * ve[n];
    for (std::size_t n = 0; n < oh.size(); ++n) oh[n] = sh * vh[n];
  }
  return out;
}

FieldSet apply_curl(const FieldSet& u, const Medium& medium) {
  FieldSet out = apply_split(SplitOperator::A, u, medium);
  out.axpy(1.0, apply_split(SplitOperator::B, u, medium));
  return out;
}

FieldSet shift_apply(SplitOperator op, double theta, const FieldSet& u, const Medium& medium) {
  FieldSet out = u;
  out.axpy(theta, apply_split(op, u, medium));
  return out;
}

}  // namespace usfdtd
