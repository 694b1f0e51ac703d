#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "usfdtd/grid.hpp"
#include "usfdtd/schemes.hpp"

namespace usfdtd {

/// One measured check. pass is exactly lower <= metric <= upper.
struct VerificationResult {
  std::string name;
  double metric = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
  double seconds = 0.0;
  /// Secondary measurements reported alongside the metric.
  std::vector<std::pair<std::string, double>> extras;
};

VerificationResult make_result(std::string name, double metric, double lower, double upper);

/// Grid, medium and step used by the default harness runs: unit cells,
/// eps = mu = 1.
Problem test_problem(std::size_t cells, double cfl);

/// Original vs fundamental form from the same random fields, maximum over
/// every step of the relative difference of the integer-step outputs.
VerificationResult equivalence_test(SchemeId scheme, std::size_t cells = 8, long steps = 100,
                                    std::uint64_t seed = 1, double cfl = 5.0);

/// Energy over `steps` steps from random fields; metric is the largest
/// energy of the run over the largest of its first tenth. Extras carry the
/// same ratio for the quadratic form each scheme conserves exactly.
VerificationResult stability_test(SchemeId scheme, Formulation form, double cfl, long steps = 10000,
                                  std::size_t cells = 8, std::uint64_t seed = 1,
                                  bool zero_fields = false);

/// Explicit leapfrog Yee scheme under the same metric; expected to blow up
/// above cfl 1.
VerificationResult explicit_yee_stability_test(double cfl, long steps = 10000,
                                               std::size_t cells = 8, std::uint64_t seed = 1);

/// Sum of a few low cavity modes with seeded random amplitudes, H = 0.
FieldSet smooth_fields(const YeeGrid& grid, std::uint64_t seed);

/// Least-squares slope of log error against log dt for dt0, dt0/2, dt0/4,
/// each against the same scheme at dt0/32, at a fixed final time.
VerificationResult convergence_order_test(SchemeId scheme, Formulation form,
                                          std::size_t cells = 8, double cfl = 0.5,
                                          long base_steps = 16, std::uint64_t seed = 1);

/// One step on a 4^3 grid against the scheme's rational matrix map, built
/// from dense copies of A and B assembled column by column.
VerificationResult dense_oracle_test(SchemeId scheme, Formulation form, std::uint64_t seed = 1,
                                     std::size_t cells = 4, double cfl = 5.0,
                                     bool zero_fields = false);

/// Fundamental ADI starting state, D'Yakonov intermediate and Douglas-Gunn
/// half increment against dense evaluations on 4^3.
std::vector<VerificationResult> dense_state_tests(std::uint64_t seed = 1);

/// LOD1 seeded through lod_to_adi_convert, D'Yakonov and Douglas-Gunn,
/// each compared with fundamental ADI at every step.
std::vector<VerificationResult> cross_scheme_link_tests(std::size_t cells = 8, long steps = 50,
                                                        std::uint64_t seed = 1, double cfl = 5.0,
                                                        bool zero_fields = false);

/// Every numeric cell of the comparison table against static_cost.
VerificationResult table_one_test();

/// Runtime flop audit of the eight table columns plus the per-step
/// magnetic path.
std::vector<VerificationResult> flop_audit_tests(std::size_t cells = 8, long steps = 4);

/// Suites: equivalence, stability, order, oracle, links, table1, audit.
const std::vector<std::string>& suite_names();
std::vector<VerificationResult> run_suite(const std::string& name, std::uint64_t seed = 1);

std::string results_csv(const std::vector<VerificationResult>& results);
std::string results_summary(const std::vector<VerificationResult>& results);

}  // namespace usfdtd
