#pragma once

#include <array>

#include "usfdtd/array3.hpp"
#include "usfdtd/grid.hpp"

namespace usfdtd {

/// How a difference treats samples beyond the array ends.
enum class Edges {
  open,  ///< only differences of stored neighbours: n -> n-1 samples
  zero,  ///< outside samples read as zero (PEC walls): n -> n+1 samples
};

/// (f[m+1] - f[m]) / h along `axis`, staggered half a cell forward.
/// With Edges::zero the input is padded by a zero on each side first.
Array3 diff_forward(const Array3& f, Axis axis, double h, Edges edges = Edges::open);

/// (f[m] - f[m-1]) / h along `axis`, staggered half a cell backward.
/// With Edges::open only interior output positions are produced.
Array3 diff_backward(const Array3& f, Axis axis, double h, Edges edges = Edges::open);

enum class SplitOperator { A, B };

constexpr SplitOperator other(SplitOperator op) {
  return op == SplitOperator::A ? SplitOperator::B : SplitOperator::A;
}

const char* to_string(SplitOperator op);

/// One off-diagonal pair of a split operator: dE/dt gets sign/eps * d(H)/d(axis)
/// and dH/dt gets sign/mu * d(E)/d(axis).
struct Coupling {
  Component e;
  Component h;
  Axis axis;
  int sign;
};

/// The three E-H pairs of A (all +) or B (all -). Indexed by E component.
const std::array<Coupling, 3>& couplings(SplitOperator op);

/// Pair of `op` that contains component c (electric or magnetic).
const Coupling& coupling_of(SplitOperator op, Component c);

/// X u for the split operator X, using Yee differences with PEC walls.
FieldSet apply_split(SplitOperator op, const FieldSet& u, const Medium& medium);

inline FieldSet apply_A(const FieldSet& u, const Medium& medium) {
  return apply_split(SplitOperator::A, u, medium);
}
inline FieldSet apply_B(const FieldSet& u, const Medium& medium) {
  return apply_split(SplitOperator::B, u, medium);
}

/// (A + B) u, the full discrete Maxwell curl operator.
FieldSet apply_curl(const FieldSet& u, const Medium& medium);

/// u + theta * X u.
FieldSet shift_apply(SplitOperator op, double theta, const FieldSet& u, const Medium& medium);

}  // namespace usfdtd
