#pragma once

// Assembled-matrix views of the field operators, for small grids.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>

#include "usfdtd/grid.hpp"
#include "usfdtd/operators.hpp"

namespace usfdtd {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Components concatenated in Ex..Hz order, each in its array order.
Eigen::VectorXd pack(const ComponentArrays& u);
void unpack(const Eigen::VectorXd& x, ComponentArrays& u);
FieldSet unpack_fields(const Eigen::VectorXd& x, const YeeGrid& grid);

/// Matrix of a linear field map, probed one unit vector at a time.
SparseMatrix assemble_columns(const std::function<FieldSet(const FieldSet&)>& op,
                              const YeeGrid& grid);

/// Matrix of apply_split(op, ., medium), column by column.
SparseMatrix assemble_split(SplitOperator op, const YeeGrid& grid, const Medium& medium);

/// A + B, column by column.
SparseMatrix assemble_curl(const YeeGrid& grid, const Medium& medium);

}  // namespace usfdtd
