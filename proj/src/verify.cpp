#include "usfdtd/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "usfdtd/cost_model.hpp"
#include "usfdtd/dense.hpp"
#include "usfdtd/operators.hpp"
#include "usfdtd/steppers.hpp"
#include "usfdtd/text.hpp"

namespace usfdtd {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string label(SchemeId s, Formulation f) {
  return std::string(to_string(s)) + "/" + to_string(f);
}

FieldSet doubled_copy(const FieldSet& u) {
  FieldSet d = to_physical(u);
  d.scale(2.0);
  return d;
}

FieldSet initial_fields(const YeeGrid& grid, std::uint64_t seed, bool zero) {
  return zero ? FieldSet(grid) : random_fields(grid, seed);
}

}  // namespace

VerificationResult make_result(std::string name, double metric, double lower, double upper) {
  VerificationResult r;
  r.name = std::move(name);
  r.metric = metric;
  r.lower = lower;
  r.upper = upper;
  r.pass = metric >= lower && metric <= upper;
  return r;
}

Problem test_problem(std::size_t cells, double cfl) {
  const YeeGrid grid = YeeGrid::cube(cells, 1.0);
  const Medium medium = Medium::normalized();
  return Problem{grid, medium, TimeConfig::from_cfl(cfl, grid, medium).dt};
}

VerificationResult equivalence_test(SchemeId scheme, std::size_t cells, long steps,
                                    std::uint64_t seed, double cfl) {
  const auto t0 = Clock::now();
  const Problem p = test_problem(cells, cfl);
  auto a = make_stepper(scheme, Formulation::Original, p);
  auto b = make_stepper(scheme, Formulation::Fundamental, p);
  const FieldSet u0 = random_fields(p.grid, seed);
  a->initialize(u0);
  b->initialize(u0);
  double worst = 0.0;
  for (long n = 0; n < steps; ++n) {
    a->step();
    b->step();
    worst = std::max(worst, relative_difference(a->output(), b->output(), p.medium));
  }
  auto r = make_result("equivalence " + std::string(to_string(scheme)), worst, 0.0, 1e-11);
  r.seconds = seconds_since(t0);
  return r;
}

namespace {

// Quadratic form left unchanged by one step: the plain energy for the
// products of Cayley factors, ||(I - dt/2 B) u||^2 for the ADI family.
double invariant(SchemeId s, const FieldSet& u, const Problem& p) {
  if (s == SchemeId::ADI || s == SchemeId::DYAKONOV || s == SchemeId::DOUGLAS_GUNN) {
    return energy(shift_apply(SplitOperator::B, -p.dt / 2, u, p.medium), p.medium);
  }
  return energy(u, p.medium);
}

double growth_ratio(double max_all, double max_head) {
  if (!std::isfinite(max_all)) return kInf;
  if (max_head == 0.0) return max_all == 0.0 ? 1.0 : kInf;
  return max_all / max_head;
}

}  // namespace

VerificationResult stability_test(SchemeId scheme, Formulation form, double cfl, long steps,
                                  std::size_t cells, std::uint64_t seed, bool zero_fields) {
  const auto t0 = Clock::now();
  const Problem p = test_problem(cells, cfl);
  auto s = make_stepper(scheme, form, p);
  s->initialize(initial_fields(p.grid, seed, zero_fields));
  const long head = std::max(1L, steps / 10);
  double e_head = 0.0, e_all = 0.0, q_head = 0.0, q_all = 0.0;
  double e_min = kInf;
  for (long n = 1; n <= steps; ++n) {
    s->step();
    const FieldSet u = s->output();
    const double e = energy(u, p.medium);
    const double q = invariant(scheme, u, p);
    if (!std::isfinite(e)) {
      e_all = kInf;
      break;
    }
    if (n <= head) {
      e_head = std::max(e_head, e);
      q_head = std::max(q_head, q);
    }
    e_all = std::max(e_all, e);
    q_all = std::max(q_all, q);
    e_min = std::min(e_min, e);
  }
  auto r = make_result("stability " + label(scheme, form) + " cfl " + format_g17(cfl),
                       growth_ratio(e_all, e_head), 0.0, 1.0 + 1e-6);
  r.extras.emplace_back("invariant_ratio", growth_ratio(q_all, q_head));
  r.extras.emplace_back("max_energy", e_all);
  r.extras.emplace_back("min_over_max_energy", e_all > 0.0 && std::isfinite(e_all) ? e_min / e_all : 0.0);
  r.seconds = seconds_since(t0);
  return r;
}

VerificationResult explicit_yee_stability_test(double cfl, long steps, std::size_t cells,
                                               std::uint64_t seed) {
  const auto t0 = Clock::now();
  const Problem p = test_problem(cells, cfl);
  FieldSet u = random_fields(p.grid, seed);
  const long head = std::max(1L, steps / 10);
  double e_head = 0.0, e_all = 0.0;
  for (long n = 1; n <= steps; ++n) {
    FieldSet c = apply_curl(u, p.medium);
    for (Component k : kElectric) {
      auto dst = u[k].values();
      const auto src = c[k].values();
      for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += p.dt * src[m];
    }
    c = apply_curl(u, p.medium);
    for (Component k : kMagnetic) {
      auto dst = u[k].values();
      const auto src = c[k].values();
      for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += p.dt * src[m];
    }
    const double e = energy(u, p.medium);
    if (!std::isfinite(e)) {
      e_all = kInf;
      break;
    }
    if (n <= head) e_head = std::max(e_head, e);
    e_all = std::max(e_all, e);
  }
  // Passing here means the metric flagged the blow-up.
  auto r = make_result("explicit-yee control cfl " + format_g17(cfl) + " flagged unstable",
                       growth_ratio(e_all, e_head), 1.0 + 1e-6, kInf);
  r.seconds = seconds_since(t0);
  return r;
}

FieldSet smooth_fields(const YeeGrid& grid, std::uint64_t seed) {
  struct Mode {
    int l, m, n;
  };
  const Mode modes[] = {{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const double lx = static_cast<double>(grid.nx) * grid.dx;
  const double ly = static_cast<double>(grid.ny) * grid.dy;
  const double lz = static_cast<double>(grid.nz) * grid.dz;
  FieldSet u(grid);
  for (const Mode& md : modes) {
    const std::array<double, 3> k{md.l * std::numbers::pi / lx, md.m * std::numbers::pi / ly,
                                  md.n * std::numbers::pi / lz};
    const std::array<double, 3> a{amp(rng), amp(rng), amp(rng)};
    for (Component c : kElectric) {
      const int d = index_of(direction_of(c));
      Array3& f = u[c];
      const Extent3 e = f.extent();
      for (std::size_t i = 0; i < e.n0; ++i) {
        for (std::size_t j = 0; j < e.n1; ++j) {
          for (std::size_t q = 0; q < e.n2; ++q) {
            const auto x = sample_position(grid, c, {i, j, q});
            double v = a[static_cast<std::size_t>(d)];
            for (int ax = 0; ax < 3; ++ax) {
              const double phase = k[static_cast<std::size_t>(ax)] * x[static_cast<std::size_t>(ax)];
              v *= ax == d ? std::cos(phase) : std::sin(phase);
            }
            f(i, j, q) += v;
          }
        }
      }
    }
  }
  return u;
}

VerificationResult convergence_order_test(SchemeId scheme, Formulation form, std::size_t cells,
                                          double cfl, long base_steps, std::uint64_t seed) {
  const auto t0 = Clock::now();
  const Problem base = test_problem(cells, cfl);
  const FieldSet u0 = smooth_fields(base.grid, seed);
  auto run = [&](long refine) {
    Problem p = base;
    p.dt = base.dt / static_cast<double>(refine);
    auto s = make_stepper(scheme, form, p);
    s->initialize(u0);
    s->advance(base_steps * refine);
    return s->output();
  };
  const FieldSet ref = run(32);
  std::vector<double> lx, ly;
  for (long refine : {1L, 2L, 4L}) {
    const double err = relative_difference(ref, run(refine), base.medium);
    lx.push_back(std::log(base.dt / static_cast<double>(refine)));
    ly.push_back(std::log(err));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
  const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t n = 0; n < lx.size(); ++n) {
    sxy += (lx[n] - mx) * (ly[n] - my);
    sxx += (lx[n] - mx) * (lx[n] - mx);
  }
  const double slope = sxy / sxx;
  const double expected = scheme == SchemeId::LOD1 ? 1.0 : 2.0;
  auto r = make_result("order " + label(scheme, form), slope, expected - 0.2, expected + 0.2);
  for (std::size_t n = 0; n < ly.size(); ++n) {
    r.extras.emplace_back("error_dt/" + std::to_string(1 << n), std::exp(ly[n]));
  }
  r.seconds = seconds_since(t0);
  return r;
}

namespace {

struct DenseOps {
  Eigen::MatrixXd A, B, I;
  double dt;

  DenseOps(const Problem& p)
      : A(Eigen::MatrixXd(assemble_split(SplitOperator::A, p.grid, p.medium))),
        B(Eigen::MatrixXd(assemble_split(SplitOperator::B, p.grid, p.medium))),
        I(Eigen::MatrixXd::Identity(A.rows(), A.cols())),
        dt(p.dt) {}

  Eigen::VectorXd solve(const Eigen::MatrixXd& m, const Eigen::VectorXd& x) const {
    return m.partialPivLu().solve(x);
  }
  // (I - th X)^-1 (I + th X) x
  Eigen::VectorXd cayley(const Eigen::MatrixXd& X, double th, const Eigen::VectorXd& x) const {
    return solve(I - th * X, x + th * (X * x));
  }

  Eigen::VectorXd step(SchemeId s, const Eigen::VectorXd& x) const {
    const double tau = dt / 2;
    const double quarter = dt / 4;
    switch (s) {
      case SchemeId::ADI:
        return solve(I - tau * B, (I + tau * A) * solve(I - tau * A, x + tau * (B * x)));
      case SchemeId::LOD1:
        return cayley(B, tau, cayley(A, tau, x));
      case SchemeId::SS2:
        return cayley(A, quarter, cayley(B, tau, cayley(A, quarter, x)));
      case SchemeId::LOD2:
        return cayley(B, -quarter, cayley(B, tau, cayley(A, tau, cayley(B, quarter, x))));
      case SchemeId::DYAKONOV: {
        const Eigen::VectorXd y = x + tau * (B * x);
        return solve(I - tau * B, solve(I - tau * A, y + tau * (A * y)));
      }
      case SchemeId::DOUGLAS_GUNN:
        return x + solve(I - tau * B, solve(I - tau * A, dt * ((A + B) * x)));
      case SchemeId::CRANK_NICOLSON_REF:
        return cayley(A + B, tau, x);
    }
    return x;
  }
};

}  // namespace

VerificationResult dense_oracle_test(SchemeId scheme, Formulation form, std::uint64_t seed,
                                     std::size_t cells, double cfl, bool zero_fields) {
  const auto t0 = Clock::now();
  if (cells > 4) throw CapabilityError("dense oracle is limited to 4^3 grids");
  const Problem p = test_problem(cells, cfl);
  const FieldSet u0 = initial_fields(p.grid, seed, zero_fields);
  const DenseOps ops(p);
  const FieldSet expected = unpack_fields(ops.step(scheme, pack(u0)), p.grid);
  auto s = make_stepper(scheme, form, p);
  s->initialize(u0);
  s->step();
  auto r = make_result("dense oracle " + label(scheme, form),
                       relative_difference(expected, s->output(), p.medium), 0.0, 1e-11);
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<VerificationResult> dense_state_tests(std::uint64_t seed) {
  std::vector<VerificationResult> out;
  const Problem p = test_problem(4, 5.0);
  const double tau = p.dt / 2;
  const FieldSet u0 = random_fields(p.grid, seed);
  const DenseOps ops(p);
  const Eigen::VectorXd x = pack(u0);

  {
    const auto t0 = Clock::now();
    const AdiFundamentalState st = adi_fundamental_init(u0, p);
    const FieldSet v = unpack_fields(ops.I * x - tau * (ops.B * x), p.grid);
    double m = relative_difference(v, st.aux, p.medium);
    m = std::max(m, relative_difference(doubled_copy(u0), st.doubled, p.medium));
    auto r = make_result("dense oracle adi-fundamental input state", m, 0.0, 1e-11);
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  for (MagneticUpdate mode : {MagneticUpdate::combined, MagneticUpdate::per_step}) {
    const auto t0 = Clock::now();
    StepperOptions opts;
    opts.magnetic = mode;
    auto dy = make_stepper(SchemeId::DYAKONOV, Formulation::Fundamental, p, opts);
    dy->initialize(u0);
    dy->step();
    FieldSet ustar(p.grid);
    static_cast<ComponentArrays&>(ustar) = *dy->auxiliary();
    ustar.scale(2.0);
    const Eigen::VectorXd y = x + tau * (ops.B * x);
    const FieldSet expected = unpack_fields(ops.solve(ops.I - tau * ops.A, y + tau * (ops.A * y)), p.grid);
    auto r = make_result(std::string("dense oracle dyakonov u* = 2v (") +
                             (mode == MagneticUpdate::combined ? "combined" : "per-step") + ")",
                         relative_difference(expected, ustar, p.medium), 0.0, 1e-11);
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  {
    const auto t0 = Clock::now();
    auto dg = make_stepper(SchemeId::DOUGLAS_GUNN, Formulation::Fundamental, p);
    dg->initialize(u0);
    dg->step();
    const Increments inc = *dg->increments();
    const FieldSet half =
        unpack_fields(ops.solve(ops.I - tau * ops.A, p.dt * ((ops.A + ops.B) * x)), p.grid);
    FieldSet full = dg->output();
    full.axpy(-1.0, u0);
    double m = relative_difference(half, inc.half, p.medium);
    m = std::max(m, relative_difference(full, inc.full, p.medium));
    auto r = make_result("dense oracle douglas-gunn increments", m, 0.0, 1e-11);
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  return out;
}

std::vector<VerificationResult> cross_scheme_link_tests(std::size_t cells, long steps,
                                                        std::uint64_t seed, double cfl,
                                                        bool zero_fields) {
  const Problem p = test_problem(cells, cfl);
  const FieldSet u0 = initial_fields(p.grid, seed, zero_fields);
  std::vector<VerificationResult> out;

  auto adi = [&] {
    auto s = make_stepper(SchemeId::ADI, Formulation::Fundamental, p);
    s->initialize(u0);
    return s;
  };

  {
    const auto t0 = Clock::now();
    auto a = adi();
    auto lod = make_stepper(SchemeId::LOD1, Formulation::Fundamental, p);
    lod->initialize(lod_to_adi_convert(adi_fundamental_init(u0, p).doubled, p));
    double worst = 0.0;
    for (long n = 0; n < steps; ++n) {
      a->step();
      lod->step();
      FieldSet v(p.grid);
      static_cast<ComponentArrays&>(v) = *lod->auxiliary();
      worst = std::max(worst, relative_difference(doubled_copy(a->output()), v, p.medium));
    }
    auto r = make_result("link lod1 seeded as adi", worst, 0.0, 1e-11);
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  {
    const auto t0 = Clock::now();
    auto a = adi();
    auto f = make_stepper(SchemeId::DYAKONOV, Formulation::Fundamental, p);
    auto o = make_stepper(SchemeId::DYAKONOV, Formulation::Original, p);
    f->initialize(u0);
    o->initialize(u0);
    double worst = 0.0;
    for (long n = 0; n < steps; ++n) {
      a->step();
      f->step();
      o->step();
      const FieldSet ua = a->output();
      worst = std::max(worst, relative_difference(ua, f->output(), p.medium));
      worst = std::max(worst, relative_difference(ua, o->output(), p.medium));
    }
    auto r = make_result("link dyakonov = adi", worst, 0.0, 1e-11);
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  {
    const auto t0 = Clock::now();
    auto a = adi();
    auto f = make_stepper(SchemeId::DOUGLAS_GUNN, Formulation::Fundamental, p);
    auto o = make_stepper(SchemeId::DOUGLAS_GUNN, Formulation::Original, p);
    f->initialize(u0);
    o->initialize(u0);
    double worst = 0.0;
    for (long n = 0; n < steps; ++n) {
      FieldSet next = f->output();
      a->step();
      f->step();
      o->step();
      next.axpy(1.0, f->increments()->full);
      const FieldSet ua = a->output();
      worst = std::max(worst, relative_difference(ua, next, p.medium));
      worst = std::max(worst, relative_difference(ua, o->output(), p.medium));
    }
    auto r = make_result("link douglas-gunn u + du = adi", worst, 0.0, 1e-11);
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  return out;
}

namespace {

struct TableColumn {
  SchemeId scheme;
  Formulation form;
  long cells[7];  // implicit M/D, A/S, explicit M/D, A/S, total M/D, A/S, M/D+A/S
  double rhs_gain;
  double overall_gain;
  int for_loops;
};

// Published comparison table, column by column.
constexpr TableColumn kTable[] = {
    {SchemeId::ADI, Formulation::Original, {18, 48, 12, 24, 30, 72, 102}, 1.00, 1.00, 12},
    {SchemeId::ADI, Formulation::Fundamental, {6, 18, 6, 12, 12, 30, 42}, 2.43, 1.83, 12},
    {SchemeId::LOD1, Formulation::Original, {18, 24, 6, 24, 24, 48, 72}, 1.42, 1.29, 12},
    {SchemeId::LOD1, Formulation::Fundamental, {6, 18, 6, 12, 12, 30, 42}, 2.43, 1.83, 12},
    {SchemeId::SS2, Formulation::Original, {27, 36, 9, 36, 36, 72, 108}, 0.94, 0.86, 18},
    {SchemeId::SS2, Formulation::Fundamental, {9, 27, 9, 18, 18, 45, 63}, 1.62, 1.22, 18},
    {SchemeId::LOD2, Formulation::Original, {18, 24, 6, 24, 24, 48, 72}, 1.42, 1.29, 12},
    {SchemeId::LOD2, Formulation::Fundamental, {6, 18, 6, 12, 12, 30, 42}, 2.43, 1.83, 12},
};

}  // namespace

VerificationResult table_one_test() {
  const auto t0 = Clock::now();
  int mismatches = 0;
  int cells = 0;
  for (const TableColumn& col : kTable) {
    const CostReport r = static_cost(col.scheme, col.form);
    const long got[7] = {r.md_implicit, r.as_implicit, r.md_explicit, r.as_explicit,
                         r.md_total(),  r.as_total(),  r.combined()};
    for (int n = 0; n < 7; ++n) {
      ++cells;
      if (got[n] != col.cells[n]) ++mismatches;
    }
    cells += 3;
    if (round2(r.rhs_gain) != col.rhs_gain) ++mismatches;
    if (round2(r.overall_gain) != col.overall_gain) ++mismatches;
    if (for_loop_count(col.scheme, col.form) != col.for_loops) ++mismatches;
  }
  auto r = make_result("table1 cells", mismatches, 0.0, 0.0);
  r.extras.emplace_back("cells_checked", cells);
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<VerificationResult> flop_audit_tests(std::size_t cells, long steps) {
  std::vector<VerificationResult> out;
  const YeeGrid grid = YeeGrid::cube(cells, 1.0);
  double worst_excess = -kInf;
  for (const TableColumn& col : kTable) {
    const auto t0 = Clock::now();
    const FlopAudit a = runtime_flop_audit(col.scheme, col.form, grid, steps);
    worst_excess = std::max(worst_excess, a.solve_excess_per_line());
    auto r = make_result("audit " + label(col.scheme, col.form) + " matches static",
                         a.matches_static ? 0.0 : 1.0, 0.0, 0.0);
    r.extras.emplace_back("combined", a.measured.combined());
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  {
    const auto t0 = Clock::now();
    const FlopAudit a = runtime_flop_audit(SchemeId::LOD2, Formulation::Fundamental, grid, steps,
                                           MagneticUpdate::per_step);
    auto r = make_result("audit lod2/fundamental per-step magnetic explicit A/S",
                         a.measured.as_explicit, 13.0, kInf);
    r.extras.emplace_back("flagged", a.measured.per_step_magnetic ? 1.0 : 0.0);
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  auto r = make_result("audit tridiagonal solve flops minus 5N per line", worst_excess, -kInf, 4.0);
  out.push_back(r);
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"equivalence", "stability", "order", "oracle",
                                              "links",       "table1",    "audit"};
  return names;
}

std::vector<VerificationResult> run_suite(const std::string& name, std::uint64_t seed) {
  std::vector<VerificationResult> out;
  if (name == "equivalence") {
    for (SchemeId s : kSchemes) out.push_back(equivalence_test(s, 8, 100, seed));
  } else if (name == "stability") {
    for (double cfl : {2.0, 5.0, 10.0}) {
      for (SchemeId s : kSchemes) {
        for (Formulation f : kFormulations) out.push_back(stability_test(s, f, cfl, 10000, 8, seed));
      }
    }
    out.push_back(explicit_yee_stability_test(2.0, 10000, 8, seed));
  } else if (name == "order") {
    for (SchemeId s : kSchemes) {
      for (Formulation f : kFormulations) out.push_back(convergence_order_test(s, f, 8, 0.5, 16, seed));
    }
  } else if (name == "oracle") {
    for (SchemeId s : kSchemes) {
      for (Formulation f : kFormulations) out.push_back(dense_oracle_test(s, f, seed));
    }
    for (auto& r : dense_state_tests(seed)) out.push_back(std::move(r));
  } else if (name == "links") {
    out = cross_scheme_link_tests(8, 50, seed);
  } else if (name == "table1") {
    out.push_back(table_one_test());
  } else if (name == "audit") {
    out = flop_audit_tests();
  } else {
    throw std::invalid_argument("unknown verification suite '" + name + "'");
  }
  return out;
}

std::string results_csv(const std::vector<VerificationResult>& results) {
  std::ostringstream os;
  os << "name,metric,lower,upper,pass,seconds,extras\n";
  for (const VerificationResult& r : results) {
    os << '"' << r.name << "\"," << format_g17(r.metric) << ',' << format_g17(r.lower) << ','
       << format_g17(r.upper) << ',' << (r.pass ? 1 : 0) << ',' << format_g17(r.seconds) << ",\"";
    for (std::size_t n = 0; n < r.extras.size(); ++n) {
      if (n) os << ';';
      os << r.extras[n].first << '=' << format_g17(r.extras[n].second);
    }
    os << "\"\n";
  }
  return os.str();
}

std::string results_summary(const std::vector<VerificationResult>& results) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const VerificationResult& r : results) {
    if (r.pass) ++passed;
    os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << format_g17(r.metric) << " in ["
       << format_g17(r.lower) << ", " << format_g17(r.upper) << "]";
    for (const auto& [k, v] : r.extras) os << "  " << k << "=" << format_g17(v);
    os << '\n';
  }
  os << passed << "/" << results.size() << " passed\n";
  return os.str();
}

}  // namespace usfdtd
