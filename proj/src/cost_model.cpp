#include "usfdtd/cost_model.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "usfdtd/text.hpp"

namespace usfdtd {

namespace {

// Flops of one component update at one sample, as written in the kernels
// with every coefficient precomputed.
struct Update {
  long md;
  long as;
};

// Original procedure, rhs (I + theta X) u: c0 E + c2 (E+ + E-) + c1 dH.
constexpr Update kSameImplicit{3, 4};
// H + c (dE' + dE).
constexpr Update kSameExplicit{1, 4};
// Peaceman-Rachford rhs (I + theta Y) u: E + c dH_y + c dH_x + c (ddE).
constexpr Update kOtherImplicit{3, 8};
// H + c dE' + c dE_2.
constexpr Update kOtherExplicit{2, 4};
// Fundamental: rhs v + c dh, then the vector subtraction.
constexpr Update kFundamentalImplicit{1, 3};
// Combined magnetic update h + c de.
constexpr Update kFundamentalCombined{1, 2};
// Separate path: 2 h + c de, then the vector subtraction.
constexpr Update kFundamentalPerStep{2, 3};

enum class Procedure { same, other, fundamental };

struct Plan {
  Procedure kind;
  int procedures;
};

Plan plan_for(SchemeId scheme, Formulation form) {
  const bool org = form == Formulation::Original;
  switch (scheme) {
    case SchemeId::ADI:
      return {org ? Procedure::other : Procedure::fundamental, 2};
    case SchemeId::LOD1:
    case SchemeId::LOD2:
      return {org ? Procedure::same : Procedure::fundamental, 2};
    case SchemeId::SS2:
      return {org ? Procedure::same : Procedure::fundamental, 3};
    case SchemeId::DYAKONOV:
    case SchemeId::DOUGLAS_GUNN:
      if (!org) return {Procedure::fundamental, 2};
      break;
    case SchemeId::CRANK_NICOLSON_REF:
      break;
  }
  throw CapabilityError(std::string(to_string(scheme)) + " " + to_string(form) +
                        " is not in the cost model");
}

}  // namespace

double round2(double x) { return std::round(x * 100.0) / 100.0; }

CostReport static_cost(SchemeId scheme, Formulation form, MagneticUpdate magnetic) {
  const Plan plan = plan_for(scheme, form);
  Update implicit{};
  Update explicit_{};
  switch (plan.kind) {
    case Procedure::same:
      implicit = kSameImplicit;
      explicit_ = kSameExplicit;
      break;
    case Procedure::other:
      implicit = kOtherImplicit;
      explicit_ = kOtherExplicit;
      break;
    case Procedure::fundamental:
      implicit = kFundamentalImplicit;
      explicit_ = magnetic == MagneticUpdate::combined ? kFundamentalCombined
                                                       : kFundamentalPerStep;
      break;
  }
  // Each procedure updates all three electric and all three magnetic components.
  const long n = 3L * plan.procedures;
  CostReport r;
  r.scheme = scheme;
  r.formulation = form;
  r.md_implicit = n * implicit.md;
  r.as_implicit = n * implicit.as;
  r.md_explicit = n * explicit_.md;
  r.as_explicit = n * explicit_.as;
  r.procedures = plan.procedures;
  r.for_loops = for_loop_count(scheme, form);
  r.field_arrays = 2;
  r.temporal_order = scheme == SchemeId::LOD1 ? 1 : 2;
  r.per_step_magnetic =
      plan.kind == Procedure::fundamental && magnetic == MagneticUpdate::per_step;
  const Gains g = efficiency_gains(r);
  r.rhs_gain = g.rhs;
  r.overall_gain = g.overall;
  return r;
}

Gains efficiency_gains(const CostReport& report) {
  // Original ADI, written out to avoid recursing through static_cost.
  const long base_rhs = 3L * 2 * (kOtherImplicit.md + kOtherImplicit.as + kOtherExplicit.md +
                                  kOtherExplicit.as);
  const long solve = 3L * kSolveFlopsPerUnknown;
  const long base_overall = base_rhs + 2 * solve;
  Gains g;
  g.rhs = static_cast<double>(base_rhs) / static_cast<double>(report.combined());
  g.overall = static_cast<double>(base_overall) /
              static_cast<double>(report.combined() + report.procedures * solve);
  return g;
}

int for_loop_count(SchemeId scheme, Formulation form) {
  // Three implicit and three explicit component loops per procedure.
  return 6 * plan_for(scheme, form).procedures;
}

std::vector<CostReport> table_one() {
  std::vector<CostReport> out;
  for (SchemeId s : {SchemeId::ADI, SchemeId::LOD1, SchemeId::SS2, SchemeId::LOD2}) {
    for (Formulation f : kFormulations) out.push_back(static_cost(s, f));
  }
  return out;
}

double FlopAudit::solve_excess_per_line() const {
  if (lines == 0) return 0.0;
  return (static_cast<double>(solve_flops) -
          kSolveFlopsPerUnknown * static_cast<double>(line_unknowns)) /
         static_cast<double>(lines);
}

FlopAudit runtime_flop_audit(SchemeId scheme, Formulation form, const YeeGrid& grid, long steps,
                             MagneticUpdate magnetic, std::uint64_t seed) {
  if (steps < 0) throw std::invalid_argument("step count must be non-negative");
  const Medium medium = Medium::normalized();
  const Problem problem{grid, medium, TimeConfig::from_cfl(5.0, grid, medium).dt};
  StepperOptions opts;
  opts.count_flops = true;
  opts.magnetic = magnetic;
  auto stepper = make_stepper(scheme, form, problem, opts);
  stepper->initialize(random_fields(grid, seed));
  stepper->reset_flop_ledger();
  stepper->advance(steps);
  const FlopLedger& ledger = *stepper->flop_ledger();

  FlopAudit audit;
  audit.steps = steps;
  CostReport& m = audit.measured;
  m.scheme = scheme;
  m.formulation = form;
  m.field_arrays = 2;
  m.per_step_magnetic = form == Formulation::Fundamental && magnetic == MagneticUpdate::per_step;
  if (steps > 0) {
    for (Component c : kComponents) {
      const flops::Tally& t = ledger.update[index_of(c)];
      const std::uint64_t samples =
          component_extent(grid, c).volume() * static_cast<std::uint64_t>(steps);
      if (t.md % samples != 0 || t.as % samples != 0) audit.uniform = false;
      const long md = static_cast<long>(t.md / samples);
      const long as = static_cast<long>(t.as / samples);
      if (is_electric(c)) {
        m.md_implicit += md;
        m.as_implicit += as;
      } else {
        m.md_explicit += md;
        m.as_explicit += as;
      }
    }
  }
  audit.solve_flops = ledger.solve.total();
  audit.lines = ledger.lines;
  audit.line_unknowns = ledger.line_unknowns;

  try {
    const CostReport s = static_cost(scheme, form, magnetic);
    m.procedures = s.procedures;
    m.for_loops = s.for_loops;
    m.temporal_order = s.temporal_order;
    const Gains g = efficiency_gains(m);
    m.rhs_gain = g.rhs;
    m.overall_gain = g.overall;
    audit.matches_static = steps > 0 && audit.uniform && s.md_implicit == m.md_implicit &&
                           s.as_implicit == m.as_implicit && s.md_explicit == m.md_explicit &&
                           s.as_explicit == m.as_explicit;
  } catch (const CapabilityError&) {
    audit.matches_static = false;
  }
  return audit;
}

namespace {

std::string column_name(const CostReport& r) {
  return std::string(to_string(r.scheme)) +
         (r.formulation == Formulation::Original ? " orig" : " new");
}

}  // namespace

std::string format_cost_table(const std::vector<CostReport>& reports) {
  std::ostringstream os;
  constexpr int label = 22;
  constexpr int cell = 17;
  auto row = [&](const std::string& name, auto&& value) {
    os << std::left << std::setw(label) << name;
    for (const CostReport& r : reports) os << std::right << std::setw(cell) << value(r);
    os << '\n';
  };
  row("Scheme", [](const CostReport& r) { return column_name(r); });
  row("Implicit M/D", [](const CostReport& r) { return std::to_string(r.md_implicit); });
  row("Implicit A/S", [](const CostReport& r) { return std::to_string(r.as_implicit); });
  row("Explicit M/D", [](const CostReport& r) { return std::to_string(r.md_explicit); });
  row("Explicit A/S", [](const CostReport& r) { return std::to_string(r.as_explicit); });
  row("Total M/D", [](const CostReport& r) { return std::to_string(r.md_total()); });
  row("Total A/S", [](const CostReport& r) { return std::to_string(r.as_total()); });
  row("Total M/D+A/S", [](const CostReport& r) { return std::to_string(r.combined()); });
  row("Efficiency gain RHS", [](const CostReport& r) { return format_fixed(r.rhs_gain, 2); });
  row("Efficiency gain all", [](const CostReport& r) { return format_fixed(r.overall_gain, 2); });
  row("For-loops", [](const CostReport& r) { return std::to_string(r.for_loops); });
  row("Field arrays", [](const CostReport& r) { return std::to_string(r.field_arrays); });
  row("Temporal accuracy", [](const CostReport& r) {
    return std::string(r.temporal_order == 1 ? "first-order" : "second-order");
  });
  return os.str();
}

std::string cost_csv(const std::vector<CostReport>& reports) {
  std::ostringstream os;
  os << "scheme,formulation,md_implicit,as_implicit,md_explicit,as_explicit,md_total,as_total,"
        "combined,rhs_gain,overall_gain,for_loops,field_arrays,temporal_order,per_step_magnetic\n";
  for (const CostReport& r : reports) {
    os << to_string(r.scheme) << ',' << to_string(r.formulation) << ',' << r.md_implicit << ','
       << r.as_implicit << ',' << r.md_explicit << ',' << r.as_explicit << ',' << r.md_total()
       << ',' << r.as_total() << ',' << r.combined() << ',' << format_g17(r.rhs_gain) << ','
       << format_g17(r.overall_gain) << ',' << r.for_loops << ',' << r.field_arrays << ','
       << r.temporal_order << ',' << (r.per_step_magnetic ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace usfdtd
