#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "usfdtd/tridiag.hpp"

using namespace usfdtd;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

Eigen::MatrixXd dense(const TridiagMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.order());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    d(r, r) = m.diag[static_cast<std::size_t>(r)];
    if (r + 1 < n) {
      d(r + 1, r) = m.sub[static_cast<std::size_t>(r)];
      d(r, r + 1) = m.sup[static_cast<std::size_t>(r)];
    }
  }
  return d;
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    num = std::max(num, std::abs(a[m] - b[m]));
    den = std::max(den, std::abs(b[m]));
  }
  return num / den;
}

}  // namespace

TEST_CASE("identity system returns the right-hand side") {
  const std::vector<double> diag(5, 1.0), off(4, 0.0);
  const auto f = factorize(diag, off, off);
  const auto rhs = random_vector(5, 3);
  CHECK(solve(f, rhs) == rhs);
}

TEST_CASE("hand-eliminated 3x3 system") {
  const auto f = factorize(std::vector<double>{2, 2, 2}, std::vector<double>{-1, -1},
                           std::vector<double>{-1, -1});
  const auto x = solve(f, std::vector<double>{1, 0, 1});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));
  CHECK(x[2] == doctest::Approx(1.0));
}

TEST_CASE("zero right-hand side gives zero") {
  const auto f = factorize(std::vector<double>{3, 3, 3, 3}, std::vector<double>{1, 1, 1},
                           std::vector<double>{-1, 2, 1});
  for (double x : solve(f, std::vector<double>(4, 0.0))) CHECK(x == 0.0);
}

TEST_CASE("round trip through multiply") {
  for (std::size_t n : {1u, 2u, 7u, 40u}) {
    TridiagMatrix m;
    m.diag = random_vector(n, 1);
    for (double& d : m.diag) d += 4.0;
    m.sub = random_vector(n - 1, 2);
    m.sup = random_vector(n - 1, 5);
    const auto x = random_vector(n, 9);
    const auto back = solve(factorize(m), m.multiply(x));
    CHECK(max_rel(back, x) <= 1e-13);
  }
}

TEST_CASE("line system against a dense inverse") {
  const YeeGrid g(17, 9, 5, 0.25, 0.5, 1.0);
  const Coefficients k{0.3, 0.8};
  for (Axis a : kAxes) {
    const TridiagMatrix m = line_matrix(a, 0.5, k.b * k.d / 2, g);
    REQUIRE(m.order() == g.cells(a) - 1);
    const auto rhs = random_vector(m.order(), 11);
    const auto f = build_line_system(a, k, g);
    const Eigen::VectorXd oracle =
        dense(m).partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size())));
    const auto x = solve(f, rhs);
    CHECK(max_rel(x, std::vector<double>(oracle.data(), oracle.data() + oracle.size())) <= 1e-13);
  }
}

TEST_CASE("line matrix stencil, row sums and dominance") {
  const YeeGrid g(9, 9, 9, 0.5, 0.5, 0.5);
  const Coefficients k{0.2, 0.7};
  const double c = k.b * k.d / (2 * g.dx * g.dx);
  const TridiagMatrix m = line_matrix(Axis::x, 0.5, k.b * k.d / 2, g);
  for (std::size_t r = 0; r < m.order(); ++r) {
    CHECK(m.diag[r] == doctest::Approx(0.5 + 2 * c));
    double off = 0.0, sum = m.diag[r];
    if (r > 0) {
      CHECK(m.sub[r - 1] == doctest::Approx(-c));
      off += std::abs(m.sub[r - 1]);
      sum += m.sub[r - 1];
    }
    if (r + 1 < m.order()) {
      CHECK(m.sup[r] == doctest::Approx(-c));
      off += std::abs(m.sup[r]);
      sum += m.sup[r];
    }
    if (r > 0 && r + 1 < m.order()) {
      CHECK(sum == doctest::Approx(0.5));
      CHECK(std::abs(m.diag[r]) - off == doctest::Approx(0.5));
    }
  }
}

TEST_CASE("diffusion-free limit solves half the identity") {
  const YeeGrid g = YeeGrid::cube(6, 1.0);
  const auto f = build_line_system(Axis::y, Coefficients{0.0, 0.0}, g);
  const auto rhs = random_vector(5, 4);
  const auto x = solve(f, rhs);
  for (std::size_t m = 0; m < rhs.size(); ++m) CHECK(x[m] == 2 * rhs[m]);
}

TEST_CASE("strided solve costs 5n - 4 flops") {
  const std::size_t n = 100;
  TridiagMatrix m;
  m.diag.assign(n, 3.0);
  m.sub.assign(n - 1, -1.0);
  m.sup.assign(n - 1, -1.0);
  const auto f = factorize(m);
  auto x = random_vector(n, 6);
  auto y = x;
  flops::Tally t;
  {
    flops::Scope<CountedReal> scope(t);
    solve_strided<CountedReal>(f, x.data(), 1);
  }
  CHECK(t.md == 3 * n - 2);
  CHECK(t.as == 2 * n - 2);
  CHECK(t.total() <= 5 * n + 4);
  solve_in_place(f, y);
  CHECK(x == y);
}

TEST_CASE("singular and malformed systems") {
  CHECK_THROWS_AS(factorize(std::vector<double>{0, 1}, std::vector<double>{1}, std::vector<double>{1}),
                  SingularSystemError);
  CHECK_THROWS(factorize(std::vector<double>{1, 1}, std::vector<double>{}, std::vector<double>{1}));
  const auto f = factorize(std::vector<double>{1, 1}, std::vector<double>{0}, std::vector<double>{0});
  CHECK_THROWS(solve(f, std::vector<double>{1, 2, 3}));
}
