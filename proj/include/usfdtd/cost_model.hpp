#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "usfdtd/grid.hpp"
#include "usfdtd/schemes.hpp"

namespace usfdtd {

/// Flops per full time step for one cell bundle (one sample of each of the
/// six components), split into the implicit (electric) and explicit
/// (magnetic) updates. Tridiagonal sweeps are not included.
struct CostReport {
  SchemeId scheme = SchemeId::ADI;
  Formulation formulation = Formulation::Original;
  long md_implicit = 0;
  long as_implicit = 0;
  long md_explicit = 0;
  long as_explicit = 0;
  int procedures = 0;
  int for_loops = 0;
  int field_arrays = 0;
  int temporal_order = 0;
  double rhs_gain = 0.0;
  double overall_gain = 0.0;
  /// Set when the magnetic updates run without the combined form.
  bool per_step_magnetic = false;

  long md_total() const { return md_implicit + md_explicit; }
  long as_total() const { return as_implicit + as_explicit; }
  long combined() const { return md_total() + as_total(); }
};

/// Tridiagonal solve cost assumed by the overall gain, per unknown.
inline constexpr int kSolveFlopsPerUnknown = 5;

/// Counts from enumerating the kernels each scheme runs. Throws
/// CapabilityError for schemes outside the four-scheme comparison table
/// other than the fundamental D'Yakonov and Douglas-Gunn forms, which run
/// the fundamental ADI procedures.
CostReport static_cost(SchemeId scheme, Formulation form,
                       MagneticUpdate magnetic = MagneticUpdate::combined);

struct Gains {
  double rhs = 0.0;
  double overall = 0.0;
};

/// Ratios against original ADI. The overall gain adds 5 flops per unknown
/// for the three implicit component solves of every procedure.
Gains efficiency_gains(const CostReport& report);

int for_loop_count(SchemeId scheme, Formulation form);

/// The eight table columns: ADI, LOD1, SS2, LOD2, each original then fundamental.
std::vector<CostReport> table_one();

/// Instrumented run: counts recorded by CountedReal kernels over `steps`
/// steps, amortized per cell bundle.
struct FlopAudit {
  CostReport measured;
  /// Every component saw the same count at every sample.
  bool uniform = true;
  /// Measured RHS counts equal static_cost (false when no static model exists).
  bool matches_static = false;
  std::uint64_t solve_flops = 0;
  std::uint64_t lines = 0;
  std::uint64_t line_unknowns = 0;
  long steps = 0;

  /// Largest solve cost per line minus 5 N, averaged over lines.
  double solve_excess_per_line() const;
};

FlopAudit runtime_flop_audit(SchemeId scheme, Formulation form, const YeeGrid& grid, long steps,
                             MagneticUpdate magnetic = MagneticUpdate::combined,
                             std::uint64_t seed = 1);

/// Aligned text in the row layout of the comparison table.
std::string format_cost_table(const std::vector<CostReport>& reports);

std::string cost_csv(const std::vector<CostReport>& reports);

/// Value rounded to two decimals, as printed in the table.
double round2(double x);

}  // namespace usfdtd
