#include "usfdtd/dense.hpp"

#include <vector>

namespace usfdtd {

Eigen::VectorXd pack(const ComponentArrays& u) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(u.unknowns()));
  Eigen::Index n = 0;
  for (Component c : kComponents) {
    for (double v : u[c].values()) x[n++] = v;
  }
  return x;
}

void unpack(const Eigen::VectorXd& x, ComponentArrays& u) {
  if (static_cast<std::size_t>(x.size()) != u.unknowns()) {
    throw DimensionError("unpack: vector length does not match the grid");
  }
  Eigen::Index n = 0;
  for (Component c : kComponents) {
    for (double& v : u[c].values()) v = x[n++];
  }
}

FieldSet unpack_fields(const Eigen::VectorXd& x, const YeeGrid& grid) {
  FieldSet u(grid);
  unpack(x, u);
  return u;
}

SparseMatrix assemble_columns(const std::function<FieldSet(const FieldSet&)>& op,
                              const YeeGrid& grid) {
  FieldSet unit(grid);
  const auto n = static_cast<Eigen::Index>(unit.unknowns());
  std::vector<Eigen::Triplet<double>> entries;
  Eigen::Index col = 0;
  for (Component c : kComponents) {
    for (double& slot : unit[c].values()) {
      slot = 1.0;
      const Eigen::VectorXd y = pack(op(unit));
      slot = 0.0;
      for (Eigen::Index row = 0; row < n; ++row) {
        if (y[row] != 0.0) entries.emplace_back(row, col, y[row]);
      }
      ++col;
    }
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

SparseMatrix assemble_split(SplitOperator op, const YeeGrid& grid, const Medium& medium) {
  return assemble_columns([&](const FieldSet& u) { return apply_split(op, u, medium); }, grid);
}

SparseMatrix assemble_curl(const YeeGrid& grid, const Medium& medium) {
  return assemble_columns([&](const FieldSet& u) { return apply_curl(u, medium); }, grid);
}

}  // namespace usfdtd
