#include <doctest.h>

#include <algorithm>

#include "usfdtd/cost_model.hpp"

using namespace usfdtd;

namespace {

struct Column {
  SchemeId scheme;
  Formulation form;
  long imd, ias, emd, eas, tmd, tas, total;
  double rhs, overall;
  int loops, order;
};

// The comparison table, transcribed column by column.
const Column kPublished[] = {
    {SchemeId::ADI, Formulation::Original, 18, 48, 12, 24, 30, 72, 102, 1.00, 1.00, 12, 2},
    {SchemeId::ADI, Formulation::Fundamental, 6, 18, 6, 12, 12, 30, 42, 2.43, 1.83, 12, 2},
    {SchemeId::LOD1, Formulation::Original, 18, 24, 6, 24, 24, 48, 72, 1.42, 1.29, 12, 1},
    {SchemeId::LOD1, Formulation::Fundamental, 6, 18, 6, 12, 12, 30, 42, 2.43, 1.83, 12, 1},
    {SchemeId::SS2, Formulation::Original, 27, 36, 9, 36, 36, 72, 108, 0.94, 0.86, 18, 2},
    {SchemeId::SS2, Formulation::Fundamental, 9, 27, 9, 18, 18, 45, 63, 1.62, 1.22, 18, 2},
    {SchemeId::LOD2, Formulation::Original, 18, 24, 6, 24, 24, 48, 72, 1.42, 1.29, 12, 2},
    {SchemeId::LOD2, Formulation::Fundamental, 6, 18, 6, 12, 12, 30, 42, 2.43, 1.83, 12, 2},
};

}  // namespace

TEST_CASE("every numeric cell of the comparison table") {
  for (const Column& c : kPublished) {
    CAPTURE(to_string(c.scheme));
    CAPTURE(to_string(c.form));
    const CostReport r = static_cost(c.scheme, c.form);
    CHECK(r.md_implicit == c.imd);
    CHECK(r.as_implicit == c.ias);
    CHECK(r.md_explicit == c.emd);
    CHECK(r.as_explicit == c.eas);
    CHECK(r.md_total() == c.tmd);
    CHECK(r.as_total() == c.tas);
    CHECK(r.combined() == c.total);
    CHECK(round2(r.rhs_gain) == c.rhs);
    CHECK(round2(r.overall_gain) == c.overall);
    CHECK(r.for_loops == c.loops);
    CHECK(for_loop_count(c.scheme, c.form) == c.loops);
    CHECK(r.field_arrays == 2);
    CHECK(r.temporal_order == c.order);
  }
}

TEST_CASE("table_one lists the eight columns in order") {
  const auto t = table_one();
  REQUIRE(t.size() == 8);
  for (std::size_t m = 0; m < 8; ++m) {
    CHECK(t[m].scheme == kPublished[m].scheme);
    CHECK(t[m].formulation == kPublished[m].form);
    CHECK(t[m].combined() == kPublished[m].total);
  }
}

TEST_CASE("gains are ratios against original ADI") {
  const CostReport base = static_cost(SchemeId::ADI, Formulation::Original);
  const Gains g = efficiency_gains(base);
  CHECK(g.rhs == 1.0);
  CHECK(g.overall == 1.0);
  const CostReport fast = static_cost(SchemeId::ADI, Formulation::Fundamental);
  CHECK(efficiency_gains(fast).rhs == doctest::Approx(102.0 / 42.0));
  // Two procedures, three solves each at 5 flops per unknown.
  CHECK(efficiency_gains(fast).overall == doctest::Approx((102.0 + 30) / (42.0 + 30)));
}

TEST_CASE("fundamental procedures cost 21 flops each") {
  for (SchemeId s : {SchemeId::ADI, SchemeId::LOD1, SchemeId::SS2, SchemeId::LOD2}) {
    const CostReport r = static_cost(s, Formulation::Fundamental);
    CHECK(r.combined() == 21 * r.procedures);
  }
}

TEST_CASE("D'Yakonov and Douglas-Gunn fundamental forms run the ADI procedures") {
  const CostReport adi = static_cost(SchemeId::ADI, Formulation::Fundamental);
  for (SchemeId s : {SchemeId::DYAKONOV, SchemeId::DOUGLAS_GUNN}) {
    const CostReport r = static_cost(s, Formulation::Fundamental);
    CHECK(r.combined() == adi.combined());
    CHECK(r.md_implicit == adi.md_implicit);
    CHECK(r.as_explicit == adi.as_explicit);
    CHECK_THROWS_AS(static_cost(s, Formulation::Original), CapabilityError);
  }
}

TEST_CASE("Crank-Nicolson is outside the model") {
  for (Formulation f : kFormulations) {
    CHECK_THROWS_AS(static_cost(SchemeId::CRANK_NICOLSON_REF, f), CapabilityError);
    CHECK_THROWS_AS(for_loop_count(SchemeId::CRANK_NICOLSON_REF, f), CapabilityError);
  }
}

TEST_CASE("per-step magnetic updates raise the explicit count") {
  const CostReport combined = static_cost(SchemeId::LOD2, Formulation::Fundamental);
  const CostReport per_step =
      static_cost(SchemeId::LOD2, Formulation::Fundamental, MagneticUpdate::per_step);
  CHECK(per_step.per_step_magnetic);
  CHECK_FALSE(combined.per_step_magnetic);
  CHECK(per_step.as_explicit > 12);
  CHECK(per_step.md_implicit == combined.md_implicit);
}

TEST_CASE("runtime audit matches the static counts") {
  const YeeGrid g = YeeGrid::cube(8, 1.0);
  const FlopAudit a = runtime_flop_audit(SchemeId::ADI, Formulation::Fundamental, g, 10);
  CHECK(a.uniform);
  CHECK(a.matches_static);
  CHECK(a.measured.combined() == 42);
  CHECK(a.lines > 0);
  CHECK(a.solve_excess_per_line() <= 4.0);

  const FlopAudit zero = runtime_flop_audit(SchemeId::ADI, Formulation::Fundamental, g, 0);
  CHECK(zero.measured.combined() == 0);
  CHECK(zero.solve_flops == 0);

  const FlopAudit ps = runtime_flop_audit(SchemeId::LOD2, Formulation::Fundamental, g, 3,
                                          MagneticUpdate::per_step);
  CHECK(ps.measured.per_step_magnetic);
  CHECK(ps.measured.as_explicit > 12);
  CHECK(ps.matches_static);

  for (const CostReport& r : table_one()) {
    CAPTURE(to_string(r.scheme));
    CAPTURE(to_string(r.formulation));
    const FlopAudit x = runtime_flop_audit(r.scheme, r.formulation, YeeGrid(5, 6, 7, 1, 1, 1), 2);
    CHECK(x.matches_static);
    CHECK(x.measured.combined() == r.combined());
  }
}

TEST_CASE("report text") {
  const std::string table = format_cost_table(table_one());
  for (const char* cell : {"102", "2.43", "1.83", "0.94", "0.86", "18", "first-order"}) {
    CHECK(table.find(cell) != std::string::npos);
  }
  const std::string csv = cost_csv({static_cost(SchemeId::SS2, Formulation::Fundamental)});
  CHECK(csv.find("63") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(round2(1.8333) == 1.83);
  CHECK(round2(0.9444) == 0.94);
}
