#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>

#include "usfdtd/dense.hpp"
#include "usfdtd/grid.hpp"
#include "usfdtd/operators.hpp"

using namespace usfdtd;

namespace {

Array3 line(std::initializer_list<double> v) {
  Array3 a(Extent3{v.size(), 1, 1});
  std::size_t m = 0;
  for (double x : v) a(m++, 0, 0) = x;
  return a;
}

double max_abs(const ComponentArrays& u) {
  double m = 0.0;
  for (Component c : kComponents) {
    for (double x : u[c].values()) m = std::max(m, std::abs(x));
  }
  return m;
}

struct Hit {
  Component c;
  Index3 at;
  double value;
};

std::vector<Hit> nonzeros(const FieldSet& u) {
  std::vector<Hit> hits;
  for (Component c : kComponents) {
    const Extent3 e = u[c].extent();
    for (std::size_t i = 0; i < e.n0; ++i)
      for (std::size_t j = 0; j < e.n1; ++j)
        for (std::size_t k = 0; k < e.n2; ++k)
          if (u[c](i, j, k) != 0.0) hits.push_back({c, {i, j, k}, u[c](i, j, k)});
  }
  return hits;
}

// Position key in half-cell units, so samples of different components line up.
using Key = std::tuple<int, long, long, long>;

Key key_of(const YeeGrid& g, Component c, const std::array<double, 3>& p) {
  return {index_of(c), std::lround(2 * p[0] / g.dx), std::lround(2 * p[1] / g.dy),
          std::lround(2 * p[2] / g.dz)};
}

// Curl matrix from coordinates alone: each row is a sample, each term looks
// up its two neighbours half a cell away; samples that are not stored are
// PEC zeros.
Eigen::MatrixXd curl_from_positions(const YeeGrid& g, const Medium& m) {
  std::map<Key, Eigen::Index> index;
  std::vector<std::pair<Component, std::array<double, 3>>> samples;
  for (Component c : kComponents) {
    const Extent3 e = component_extent(g, c);
    for (std::size_t i = 0; i < e.n0; ++i)
      for (std::size_t j = 0; j < e.n1; ++j)
        for (std::size_t k = 0; k < e.n2; ++k) {
          const auto p = sample_position(g, c, {i, j, k});
          index[key_of(g, c, p)] = static_cast<Eigen::Index>(samples.size());
          samples.emplace_back(c, p);
        }
  }
  // eps dE/dt = curl H, mu dH/dt = -curl E; (row, source, axis, sign)
  const std::vector<std::tuple<Component, Component, int, double>> terms{
      {Component::Ex, Component::Hz, 1, 1.0},  {Component::Ex, Component::Hy, 2, -1.0},
      {Component::Ey, Component::Hx, 2, 1.0},  {Component::Ey, Component::Hz, 0, -1.0},
      {Component::Ez, Component::Hy, 0, 1.0},  {Component::Ez, Component::Hx, 1, -1.0},
      {Component::Hx, Component::Ey, 2, 1.0},  {Component::Hx, Component::Ez, 1, -1.0},
      {Component::Hy, Component::Ez, 0, 1.0},  {Component::Hy, Component::Ex, 2, -1.0},
      {Component::Hz, Component::Ex, 1, 1.0},  {Component::Hz, Component::Ey, 0, -1.0}};
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  const double h[3] = {g.dx, g.dy, g.dz};
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& [c, p] = samples[static_cast<std::size_t>(r)];
    const double w = is_electric(c) ? 1.0 / m.epsilon : 1.0 / m.mu;
    for (const auto& [row, src, axis, sign] : terms) {
      if (row != c) continue;
      for (int side : {-1, 1}) {
        auto q = p;
        q[static_cast<std::size_t>(axis)] += side * h[axis] / 2;
        const auto it = index.find(key_of(g, src, q));
        if (it != index.end()) M(r, it->second) += side * sign * w / h[axis];
      }
    }
  }
  return M;
}

}  // namespace

TEST_CASE("diff_forward examples") {
  Array3 c(Extent3{4, 3, 5}, 2.5);
  for (Axis a : kAxes) {
    const Array3 d = diff_forward(c, a, 0.3);
    for (double x : d.values()) CHECK(x == 0.0);
  }
  Array3 ramp(Extent3{6, 2, 2});
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) ramp(i, j, k) = 0.5 * static_cast<double>(i);
  const Array3 dr = diff_forward(ramp, Axis::x, 0.5);
  for (double x : dr.values()) CHECK(x == doctest::Approx(1.0));

  const Array3 d = diff_forward(line({1, 4, 9}), Axis::x, 1.0);
  REQUIRE(d.extent().n0 == 2);
  CHECK(d(0, 0, 0) == 3.0);
  CHECK(d(1, 0, 0) == 5.0);
}

TEST_CASE("diff_backward examples") {
  Array3 c(Extent3{3, 4, 5}, -1.0);
  for (Axis a : kAxes) {
    const Array3 d = diff_backward(c, a, 0.7);
    for (double x : d.values()) CHECK(x == 0.0);
  }
  const double s = 1.75;
  Array3 ramp(Extent3{2, 2, 7});
  for (std::size_t k = 0; k < 7; ++k) ramp(0, 0, k) = ramp(1, 1, k) = ramp(0, 1, k) = ramp(1, 0, k) = s * 0.2 * static_cast<double>(k);
  const Array3 dr = diff_backward(ramp, Axis::z, 0.2);
  for (double x : dr.values()) CHECK(x == doctest::Approx(s));

  const Array3 f = line({2, -1, 3, 0.5, 4});
  const Array3 dd = diff_backward(diff_forward(f, Axis::x, 0.5), Axis::x, 0.5);
  REQUIRE(dd.extent().n0 == 3);
  for (std::size_t i = 1; i < 4; ++i) {
    const double expect = (f(i + 1, 0, 0) - 2 * f(i, 0, 0) + f(i - 1, 0, 0)) / 0.25;
    CHECK(dd(i - 1, 0, 0) == doctest::Approx(expect));
  }
}

TEST_CASE("zero edges pad with PEC zeros") {
  const Array3 d = diff_forward(line({1, 2}), Axis::x, 1.0, Edges::zero);
  REQUIRE(d.extent().n0 == 3);
  CHECK(d(0, 0, 0) == 1.0);
  CHECK(d(1, 0, 0) == 1.0);
  CHECK(d(2, 0, 0) == -2.0);
}

TEST_CASE("component extents drop PEC wall samples") {
  const YeeGrid g(4, 5, 6, 1, 1, 1);
  CHECK(component_extent(g, Component::Ex) == Extent3{4, 4, 5});
  CHECK(component_extent(g, Component::Ey) == Extent3{3, 5, 5});
  CHECK(component_extent(g, Component::Ez) == Extent3{3, 4, 6});
  CHECK(component_extent(g, Component::Hx) == Extent3{3, 5, 6});
  CHECK(component_extent(g, Component::Hy) == Extent3{4, 4, 6});
  CHECK(component_extent(g, Component::Hz) == Extent3{4, 5, 5});
}

TEST_CASE("time configuration") {
  const YeeGrid g = YeeGrid::cube(8, 1e-3);
  const Medium m = Medium::vacuum();
  const TimeConfig t = TimeConfig::from_cfl(5.0, g, m);
  CHECK(t.dt == doctest::Approx(5.0 * explicit_time_limit(g, m)));
  CHECK(TimeConfig::from_dt(t.dt, g, m).cfl_number == doctest::Approx(5.0));
  CHECK(explicit_time_limit(g, m) == doctest::Approx(1e-3 / (m.light_speed() * std::sqrt(3.0))));
  const Coefficients k = Coefficients::from(2e-12, m);
  CHECK(k.b == doctest::Approx(1e-12 / m.epsilon));
  CHECK(k.d == doctest::Approx(1e-12 / m.mu));
}

TEST_CASE("apply_A and apply_B of zero and of a constant Hz") {
  const YeeGrid g = YeeGrid::cube(5, 1.0);
  const Medium m(2.0, 3.0);
  FieldSet zero(g);
  CHECK(max_abs(apply_A(zero, m)) == 0.0);
  CHECK(max_abs(apply_B(zero, m)) == 0.0);
  FieldSet hz(g);
  hz[Component::Hz].fill(4.0);
  CHECK(max_abs(apply_A(hz, m)) == 0.0);
}

TEST_CASE("Hz impulse under A touches two y-neighbour Ex samples") {
  const YeeGrid g(5, 6, 7, 0.5, 0.25, 2.0);
  const Medium m(2.0, 3.0);
  FieldSet u(g);
  const Index3 at{2, 3, 3};
  u[Component::Hz](at.i, at.j, at.k) = 1.5;
  const auto hits = nonzeros(apply_A(u, m));
  REQUIRE(hits.size() == 2);
  const auto ph = sample_position(g, Component::Hz, at);
  for (const Hit& h : hits) {
    CHECK(h.c == Component::Ex);
    const auto pe = sample_position(g, Component::Ex, h.at);
    CHECK(pe[0] == doctest::Approx(ph[0]));
    CHECK(pe[2] == doctest::Approx(ph[2]));
    CHECK(std::abs(pe[1] - ph[1]) == doctest::Approx(g.dy / 2));
    // dEx/dt = dHz/dy / eps: the sample below sees +Hz/(eps dy).
    const double expect = (pe[1] < ph[1] ? 1.0 : -1.0) * 1.5 / (m.epsilon * g.dy);
    CHECK(h.value == doctest::Approx(expect));
  }
}

TEST_CASE("Hy impulse under B touches two z-neighbour Ex samples with the opposite pattern") {
  const YeeGrid g(5, 6, 7, 0.5, 0.25, 2.0);
  const Medium m(2.0, 3.0);
  FieldSet u(g);
  const Index3 at{1, 2, 3};
  u[Component::Hy](at.i, at.j, at.k) = 1.5;
  const auto hits = nonzeros(apply_B(u, m));
  REQUIRE(hits.size() == 2);
  const auto ph = sample_position(g, Component::Hy, at);
  for (const Hit& h : hits) {
    CHECK(h.c == Component::Ex);
    const auto pe = sample_position(g, Component::Ex, h.at);
    CHECK(pe[0] == doctest::Approx(ph[0]));
    CHECK(pe[1] == doctest::Approx(ph[1]));
    CHECK(std::abs(pe[2] - ph[2]) == doctest::Approx(g.dz / 2));
    const double expect = (pe[2] < ph[2] ? -1.0 : 1.0) * 1.5 / (m.epsilon * g.dz);
    CHECK(h.value == doctest::Approx(expect));
  }
}

TEST_CASE("A + B equals the curl assembled from sample coordinates") {
  const YeeGrid g(4, 3, 5, 0.5, 1.5, 0.75);
  const Medium m(1.3, 0.7);
  const Eigen::MatrixXd oracle = curl_from_positions(g, m);
  const Eigen::MatrixXd split =
      Eigen::MatrixXd(assemble_split(SplitOperator::A, g, m)) + Eigen::MatrixXd(assemble_split(SplitOperator::B, g, m));
  const Eigen::MatrixXd curl = Eigen::MatrixXd(assemble_curl(g, m));
  REQUIRE(oracle.rows() == curl.rows());
  CHECK((split - oracle).cwiseAbs().maxCoeff() <= 1e-14 * oracle.cwiseAbs().maxCoeff());
  CHECK((curl - oracle).cwiseAbs().maxCoeff() <= 1e-14 * oracle.cwiseAbs().maxCoeff());
}

TEST_CASE("split operators are skew in the energy inner product") {
  const YeeGrid g = YeeGrid::cube(4, 1.0);
  const Medium m(2.0, 0.5);
  Eigen::VectorXd w = pack([&] {
    FieldSet f(g);
    for (Component c : kComponents) f[c].fill(is_electric(c) ? m.epsilon : m.mu);
    return f;
  }());
  for (SplitOperator op : {SplitOperator::A, SplitOperator::B}) {
    const Eigen::MatrixXd X(assemble_split(op, g, m));
    const Eigen::MatrixXd WX = w.asDiagonal() * X;
    CHECK((WX + WX.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("energy, norms and scaling") {
  const YeeGrid g(3, 3, 3, 0.5, 1.0, 2.0);
  const Medium m(2.0, 3.0);
  FieldSet u(g);
  u.fill(1.0);
  std::size_t ne = 0, nh = 0;
  for (Component c : kElectric) ne += u[c].size();
  for (Component c : kMagnetic) nh += u[c].size();
  CHECK(energy(u, m) == doctest::Approx((2.0 * ne + 3.0 * nh) * g.cell_volume()));
  FieldSet d(g, Scaling::doubled);
  d.fill(4.0);
  const FieldSet p = to_physical(d);
  CHECK(p.scaling == Scaling::physical);
  CHECK(p[Component::Hy](1, 1, 1) == 2.0);
  CHECK(relative_difference(u, u, m) == 0.0);
  CHECK(random_fields(g, 7) == random_fields(g, 7));
  CHECK_FALSE(random_fields(g, 7) == random_fields(g, 8));
  const FieldSet r = random_fields(g, 3);
  for (Component c : kComponents) {
    for (double x : r[c].values()) CHECK((x >= -1.0 && x <= 1.0));
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(parse_component("Gx"), std::invalid_argument);
  CHECK(parse_component("Hz") == Component::Hz);
  CHECK_THROWS(Medium(-1.0, 1.0));
  CHECK_THROWS(YeeGrid(4, 4, 4, 0.0, 1.0, 1.0));
  FieldSet a(YeeGrid::cube(3, 1.0)), b(YeeGrid::cube(4, 1.0));
  CHECK_THROWS_AS(a.axpy(1.0, b), DimensionError);
}
