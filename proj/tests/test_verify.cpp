#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "usfdtd/verify.hpp"

using namespace usfdtd;

namespace {

void check_all(const std::vector<VerificationResult>& rs) {
  for (const auto& r : rs) {
    CAPTURE(r.name);
    CAPTURE(r.metric);
    CHECK(r.pass);
  }
}

}  // namespace

TEST_CASE("pass flag is exactly the threshold test") {
  CHECK(make_result("a", 0.5, 0.0, 1.0).pass);
  CHECK(make_result("b", 1.0, 0.0, 1.0).pass);
  CHECK_FALSE(make_result("c", 1.0 + 1e-12, 0.0, 1.0).pass);
  CHECK_FALSE(make_result("d", std::nan(""), 0.0, 1.0).pass);
}

TEST_CASE("equivalence of the two forms") {
  for (SchemeId s : kSchemes) {
    const auto r = equivalence_test(s, 8, 100, 1, 5.0);
    CAPTURE(r.name);
    CHECK(r.metric <= 1e-11);
    CHECK(r.pass);
  }
  CHECK(equivalence_test(SchemeId::LOD2, 4, 10, 0, 5.0).metric >= 0.0);
}

TEST_CASE("stability metric") {
  const auto zero = stability_test(SchemeId::ADI, Formulation::Fundamental, 10.0, 100, 6, 1, true);
  CHECK(zero.pass);
  CHECK(std::find(zero.extras.begin(), zero.extras.end(), std::pair<std::string, double>("max_energy", 0.0)) !=
        zero.extras.end());
  const auto lod = stability_test(SchemeId::LOD1, Formulation::Fundamental, 10.0, 1000, 6);
  CHECK(lod.pass);
  const auto yee = explicit_yee_stability_test(2.0, 2000, 6);
  CHECK(yee.pass);
  CHECK(yee.metric > 1.0 + 1e-6);
}

TEST_CASE("ADI conserves its own quadratic form") {
  const auto r = stability_test(SchemeId::ADI, Formulation::Original, 10.0, 500, 6);
  bool found = false;
  for (const auto& [k, v] : r.extras) {
    if (k != "invariant_ratio") continue;
    found = true;
    CHECK(v <= 1.0 + 1e-10);
  }
  CHECK(found);
}

TEST_CASE("convergence order of short runs") {
  const auto lod1 = convergence_order_test(SchemeId::LOD1, Formulation::Fundamental);
  CHECK(lod1.metric == doctest::Approx(1.0).epsilon(0.2));
  const auto adi = convergence_order_test(SchemeId::ADI, Formulation::Fundamental);
  CHECK(adi.metric == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("dense oracles") {
  for (SchemeId s : kSchemes) {
    for (Formulation f : kFormulations) {
      const auto r = dense_oracle_test(s, f, 3);
      CAPTURE(r.name);
      CHECK(r.metric <= 1e-11);
      CHECK(dense_oracle_test(s, f, 3, 4, 5.0, true).metric == 0.0);
    }
  }
  check_all(dense_state_tests(2));
}

TEST_CASE("cross-scheme links") {
  check_all(cross_scheme_link_tests(8, 50, 1, 5.0));
  for (const auto& r : cross_scheme_link_tests(6, 5, 1, 5.0, true)) CHECK(r.metric == 0.0);
}

TEST_CASE("table and flop audit suites") {
  CHECK(table_one_test().pass);
  check_all(flop_audit_tests(6, 2));
}

TEST_CASE("suite registry and reports") {
  const auto& names = suite_names();
  for (const char* n : {"equivalence", "stability", "order", "oracle", "links", "table1", "audit"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  CHECK_THROWS_AS(run_suite("nonsense"), std::invalid_argument);
  const auto rs = run_suite("table1");
  REQUIRE(rs.size() == 1);
  const std::string csv = results_csv(rs);
  CHECK(csv.rfind("name,", 0) == 0);
  CHECK(csv.find(",1,") != std::string::npos);
  CHECK(results_summary(rs).find("1/1") != std::string::npos);
}
