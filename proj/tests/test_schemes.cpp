#include <doctest.h>

#include <cmath>

#include "usfdtd/dense.hpp"
#include "usfdtd/operators.hpp"
#include "usfdtd/schemes.hpp"
#include "usfdtd/steppers.hpp"
#include "usfdtd/verify.hpp"

using namespace usfdtd;

namespace {

const std::array<MagneticUpdate, 2> kMagneticModes{MagneticUpdate::combined,
                                                   MagneticUpdate::per_step};

std::unique_ptr<Stepper> started(SchemeId s, Formulation f, const Problem& p, const FieldSet& u0,
                                 StepperOptions o = {}) {
  auto st = make_stepper(s, f, p, o);
  st->initialize(u0);
  return st;
}

double max_abs(const ComponentArrays& u) {
  double m = 0.0;
  for (Component c : kComponents) {
    for (double x : u[c].values()) m = std::max(m, std::abs(x));
  }
  return m;
}

// Constant H with E = 0: tangential H has no wall samples, so both split
// operators annihilate it. Constant E does not survive the PEC walls.
FieldSet constant_fields(const YeeGrid& g, double v) {
  FieldSet u(g);
  for (Component c : kMagnetic) u[c].fill(v);
  return u;
}

std::string label(SchemeId s, Formulation f) {
  return std::string(to_string(s)) + "/" + to_string(f);
}

}  // namespace

TEST_CASE("zero fields stay zero") {
  const Problem p = test_problem(6, 5.0);
  for (SchemeId s : kSchemes) {
    for (Formulation f : kFormulations) {
      for (MagneticUpdate mag : kMagneticModes) {
        CAPTURE(label(s, f));
        auto st = started(s, f, p, FieldSet(p.grid), {1, mag, false});
        st->advance(3);
        CHECK(max_abs(st->output()) == 0.0);
      }
    }
  }
}

TEST_CASE("fundamental ADI starting state") {
  const Problem p = test_problem(4, 5.0);
  SUBCASE("zero") {
    const auto s = adi_fundamental_init(FieldSet(p.grid), p);
    CHECK(max_abs(s.doubled) == 0.0);
    CHECK(max_abs(s.aux) == 0.0);
  }
  SUBCASE("constant magnetic fields lie in the null space of B") {
    const FieldSet u0 = constant_fields(p.grid, 0.75);
    CHECK(max_abs(apply_B(u0, p.medium)) == 0.0);
    const auto s = adi_fundamental_init(u0, p);
    for (Component c : kComponents) {
      for (std::size_t m = 0; m < u0[c].size(); ++m) {
        CHECK(s.doubled[c].values()[m] == 2 * u0[c].values()[m]);
        CHECK(s.aux[c].values()[m] == u0[c].values()[m]);
      }
    }
  }
  SUBCASE("random fields against dense (I - dt/2 B) u0") {
    const FieldSet u0 = random_fields(p.grid, 4);
    const auto s = adi_fundamental_init(u0, p);
    const Eigen::MatrixXd B(assemble_split(SplitOperator::B, p.grid, p.medium));
    const Eigen::VectorXd x = pack(u0);
    const Eigen::VectorXd v = x - p.dt / 2 * (B * x);
    CHECK((pack(s.aux) - v).cwiseAbs().maxCoeff() <= 1e-13 * v.cwiseAbs().maxCoeff());
    CHECK(s.doubled.scaling == Scaling::doubled);
    CHECK(pack(s.doubled) == 2 * x);
  }
}

TEST_CASE("output retrieval") {
  const Problem p = test_problem(5, 2.0);
  FieldSet d(p.grid, Scaling::doubled);
  CHECK(max_abs(adi_output(d)) == 0.0);
  const FieldSet u = random_fields(p.grid, 2);
  FieldSet twice = u;
  twice.scale(2.0);
  twice.scaling = Scaling::doubled;
  CHECK(adi_output(twice) == u);
  for (SchemeId s : kSchemes) {
    for (Formulation f : kFormulations) {
      CAPTURE(label(s, f));
      const FieldSet back = started(s, f, p, u)->output();
      CHECK(relative_difference(u, back, p.medium) <= 1e-15);
    }
  }
}

TEST_CASE("LOD2 input and output processing") {
  const Problem p = test_problem(4, 5.0);
  for (Formulation f : kFormulations) {
    CHECK(max_abs(lod2_input(FieldSet(p.grid), f, p)) == 0.0);
    CHECK(max_abs(lod2_output(FieldSet(p.grid), f, p)) == 0.0);
  }
  const FieldSet c = constant_fields(p.grid, -2.0);
  for (Formulation f : kFormulations) CHECK(lod2_input(c, f, p) == c);
  const FieldSet u0 = random_fields(p.grid, 8);
  const FieldSet qo = lod2_input(u0, Formulation::Original, p);
  const FieldSet qf = lod2_input(u0, Formulation::Fundamental, p);
  CHECK(relative_difference(qo, qf, p.medium) <= 1e-13);
  for (Formulation f : kFormulations) {
    CHECK(relative_difference(u0, lod2_output(lod2_input(u0, f, p), f, p), p.medium) <= 1e-13);
  }
  CHECK(relative_difference(lod2_output(qo, Formulation::Original, p),
                            lod2_output(qo, Formulation::Fundamental, p), p.medium) <= 1e-13);
}

TEST_CASE("LOD to ADI conversion") {
  const Problem p = test_problem(4, 5.0);
  CHECK(max_abs(lod_to_adi_convert(AuxFieldSet(p.grid), p)) == 0.0);
  const FieldSet v = constant_fields(p.grid, 3.0);
  FieldSet half = v;
  half.scale(0.5);
  CHECK(lod_to_adi_convert(v, p) == half);
}

TEST_CASE("Crank-Nicolson reference step") {
  const Problem p = test_problem(4, 5.0);
  CHECK(max_abs(crank_nicolson_reference_step(FieldSet(p.grid), Formulation::Original, p)) == 0.0);
  const FieldSet u = random_fields(p.grid, 5);
  const FieldSet a = crank_nicolson_reference_step(u, Formulation::Original, p);
  const FieldSet b = crank_nicolson_reference_step(u, Formulation::Fundamental, p);
  CHECK(relative_difference(a, b, p.medium) <= 1e-12);
  // Conserves the energy exactly in exact arithmetic.
  CHECK(energy(a, p.medium) == doctest::Approx(energy(u, p.medium)).epsilon(1e-12));
}

TEST_CASE("one CN step and one ADI step differ at third order in dt") {
  const YeeGrid g = YeeGrid::cube(4, 1.0);
  const FieldSet u = smooth_fields(g, 3);
  double previous = 0.0;
  for (double cfl : {0.4, 0.2, 0.1}) {
    const Problem p = test_problem(4, cfl);
    auto adi = started(SchemeId::ADI, Formulation::Original, p, u);
    adi->step();
    const FieldSet cn = crank_nicolson_reference_step(u, Formulation::Original, p);
    FieldSet d = adi->output();
    d.axpy(-1.0, cn);
    const double diff = weighted_norm(d, p.medium);
    if (previous > 0.0) {
      MESSAGE("halving ratio " << previous / diff);
      CHECK(previous / diff == doctest::Approx(8.0).epsilon(0.1));
    }
    previous = diff;
  }
}

TEST_CASE("checkpoint and restore continue bit for bit") {
  const Problem p = test_problem(6, 5.0);
  const FieldSet u0 = random_fields(p.grid, 12);
  for (SchemeId s : kSchemes) {
    for (Formulation f : kFormulations) {
      for (MagneticUpdate mag : kMagneticModes) {
        CAPTURE(label(s, f));
        const StepperOptions o{1, mag, false};
        auto a = started(s, f, p, u0, o);
        a->advance(3);
        const auto saved = a->checkpoint();
        a->advance(4);
        auto b = make_stepper(s, f, p, o);
        b->restore(saved, 3);
        CHECK(b->step_index() == 3);
        b->advance(4);
        CHECK(a->output() == b->output());
        CHECK(a->step_index() == b->step_index());
      }
    }
  }
}

TEST_CASE("sources: immediate effect and form independence") {
  const Problem p = test_problem(6, 5.0);
  const FieldSet u0 = random_fields(p.grid, 21);
  const Index3 at{2, 3, 2};
  for (SchemeId s : kSchemes) {
    CAPTURE(to_string(s));
    std::vector<std::unique_ptr<Stepper>> st;
    for (Formulation f : kFormulations) {
      for (MagneticUpdate mag : kMagneticModes) st.push_back(started(s, f, p, u0, {1, mag, false}));
    }
    for (auto& x : st) {
      const double before = x->output()[Component::Ey](at.i, at.j, at.k);
      x->add_electric_source(Component::Ey, at, 0.5);
      const FieldSet after = x->output();
      CHECK(after[Component::Ey](at.i, at.j, at.k) == doctest::Approx(before + 0.5).epsilon(1e-14));
      FieldSet d = after;
      d[Component::Ey](at.i, at.j, at.k) -= 0.5;
      CHECK(relative_difference(u0, d, p.medium) <= 1e-14);
    }
    for (int n = 0; n < 20; ++n) {
      for (auto& x : st) {
        x->add_electric_source(Component::Ez, {1, 2, 3}, std::sin(0.3 * n));
        x->step();
      }
    }
    const FieldSet ref = st.front()->output();
    for (auto& x : st) CHECK(relative_difference(ref, x->output(), p.medium) <= 1e-11);
  }
}

TEST_CASE("thread count does not change a single bit") {
  const Problem p = test_problem(8, 5.0);
  const FieldSet u0 = random_fields(p.grid, 33);
  for (SchemeId s : kSchemes) {
    for (Formulation f : kFormulations) {
      CAPTURE(label(s, f));
      auto one = started(s, f, p, u0, {1, MagneticUpdate::combined, false});
      auto many = started(s, f, p, u0, {3, MagneticUpdate::combined, false});
      one->advance(5);
      many->advance(5);
      CHECK(one->output() == many->output());
    }
  }
}

TEST_CASE("fundamental forms expose auxiliary vectors and increments") {
  const Problem p = test_problem(4, 5.0);
  const FieldSet u0 = random_fields(p.grid, 2);
  auto lod = started(SchemeId::LOD1, Formulation::Fundamental, p, u0);
  lod->step();
  CHECK(lod->auxiliary().has_value());
  CHECK_FALSE(started(SchemeId::LOD1, Formulation::Original, p, u0)->auxiliary().has_value());
  auto dg = started(SchemeId::DOUGLAS_GUNN, Formulation::Fundamental, p, u0);
  CHECK_FALSE(dg->increments().has_value());
  dg->step();
  const auto inc = dg->increments();
  REQUIRE(inc.has_value());
  FieldSet rebuilt = u0;
  rebuilt.axpy(1.0, inc->full);
  CHECK(relative_difference(dg->output(), rebuilt, p.medium) <= 1e-13);
}

TEST_CASE("scheme and formulation names") {
  for (SchemeId s : kSchemes) CHECK(parse_scheme(to_string(s)) == s);
  CHECK(parse_scheme("SS1") == SchemeId::LOD1);
  CHECK(parse_scheme("dg") == SchemeId::DOUGLAS_GUNN);
  CHECK(parse_scheme("cn") == SchemeId::CRANK_NICOLSON_REF);
  CHECK(parse_formulation("new") == Formulation::Fundamental);
  CHECK(parse_formulation("org") == Formulation::Original);
  CHECK_THROWS_AS(parse_scheme("leapfrog"), std::invalid_argument);
  CHECK_THROWS_AS(parse_formulation("fast"), std::invalid_argument);
}

TEST_CASE("misuse is reported") {
  const Problem p = test_problem(4, 5.0);
  auto st = make_stepper(SchemeId::ADI, Formulation::Original, p);
  CHECK_THROWS_AS(st->step(), StateError);
  CHECK_THROWS_AS(st->output(), StateError);
  CHECK_THROWS_AS(st->initialize(FieldSet(YeeGrid::cube(5, 1.0))), DimensionError);
  FieldSet bad(p.grid);
  bad[Component::Ex](0, 0, 0) = std::nan("");
  CHECK_THROWS_AS(st->initialize(bad), std::invalid_argument);
  st->initialize(FieldSet(p.grid));
  CHECK_THROWS_AS(st->add_electric_source(Component::Hx, {0, 0, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(st->add_electric_source(Component::Ex, {0, 3, 0}, 1.0), DimensionError);
  Problem zero_dt = p;
  zero_dt.dt = 0.0;
  CHECK_THROWS_AS(make_stepper(SchemeId::ADI, Formulation::Original, zero_dt), std::invalid_argument);
  CHECK_THROWS_AS(make_stepper(SchemeId::CRANK_NICOLSON_REF, Formulation::Original, test_problem(20, 5.0)),
                  CapabilityError);
  CHECK_THROWS_AS(make_stepper(SchemeId::CRANK_NICOLSON_REF, Formulation::Original, p,
                               {1, MagneticUpdate::combined, true}),
                  CapabilityError);
}
