#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "usfdtd/cost_model.hpp"
#include "usfdtd/run_config.hpp"
#include "usfdtd/simulation.hpp"
#include "usfdtd/snapshot.hpp"
#include "usfdtd/text.hpp"
#include "usfdtd/verify.hpp"

using namespace usfdtd;

namespace {

enum Exit { ok = 0, usage = 1, verification = 2, numerical = 3 };

struct Common {
  std::optional<int> threads;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

int do_run(const Common& common, const std::string& config_path,
           const std::vector<std::string>& sets) {
  std::map<std::string, std::string> kv;
  if (!config_path.empty()) kv = read_key_value_file(config_path);
  for (const std::string& s : sets) {
    const auto [k, v] = split_assignment(s);
    kv[k] = v;
  }
  if (common.threads) kv["threads"] = std::to_string(*common.threads);
  if (common.out) kv["out_dir"] = *common.out;
  if (common.seed) kv["seed"] = std::to_string(*common.seed);
  const RunConfig config = apply_settings(RunConfig{}, kv);
  const RunSummary s = run_simulation(config);
  std::cout << "steps " << s.first_step << ".." << s.last_step << "  final energy "
            << format_g17(s.final_energy) << "  output " << config.out_dir << "\n";
  return ok;
}

int do_verify(const Common& common, const std::vector<std::string>& suites) {
  const auto& names = suite_names();
  if (suites.empty()) {
    std::cout << "suites:";
    for (const auto& n : names) std::cout << ' ' << n;
    std::cout << "\n";
    return ok;
  }
  std::vector<std::string> chosen;
  for (const std::string& s : suites) {
    if (s == "all") {
      chosen.insert(chosen.end(), names.begin(), names.end());
    } else if (std::find(names.begin(), names.end(), s) != names.end()) {
      chosen.push_back(s);
    } else {
      std::cerr << "error: unknown suite '" << s << "'\n";
      return usage;
    }
  }
  std::vector<VerificationResult> all;
  for (const std::string& s : chosen) {
    auto r = run_suite(s, common.seed.value_or(1));
    all.insert(all.end(), r.begin(), r.end());
  }
  const std::string summary = results_summary(all);
  std::cout << summary;
  const std::filesystem::path out(common.out.value_or("usfdtd_out"));
  std::filesystem::create_directories(out);
  std::ofstream(out / "verify_results.csv", std::ios::binary) << results_csv(all);
  std::ofstream(out / "verify_summary.txt", std::ios::binary) << summary;
  for (const auto& r : all) {
    if (!r.pass) return verification;
  }
  return ok;
}

int do_cost(const std::string& scheme_name, const std::string& form_name, bool csv,
            bool per_step, bool audit) {
  std::vector<CostReport> reports;
  const auto magnetic = per_step ? MagneticUpdate::per_step : MagneticUpdate::combined;
  if (scheme_name.empty()) {
    if (per_step) {
      for (const CostReport& r : table_one()) reports.push_back(static_cost(r.scheme, r.formulation, magnetic));
    } else {
      reports = table_one();
    }
  } else {
    const SchemeId s = parse_scheme(scheme_name);
    std::vector<Formulation> forms(kFormulations.begin(), kFormulations.end());
    if (!form_name.empty()) forms = {parse_formulation(form_name)};
    for (Formulation f : forms) {
      try {
        reports.push_back(static_cost(s, f, magnetic));
      } catch (const CapabilityError&) {
        std::cerr << to_string(s) << "/" << to_string(f) << " is not in cost model\n";
        if (!form_name.empty() || s == SchemeId::CRANK_NICOLSON_REF) return usage;
      }
    }
  }
  std::cout << (csv ? cost_csv(reports) : format_cost_table(reports));
  if (audit) {
    const YeeGrid grid = YeeGrid::cube(8, 1.0);
    for (const CostReport& r : reports) {
      const FlopAudit a = runtime_flop_audit(r.scheme, r.formulation, grid, 2, magnetic);
      std::cout << "audit " << to_string(r.scheme) << "/" << to_string(r.formulation)
                << ": combined " << a.measured.combined() << (a.matches_static ? " matches" : " DIFFERS")
                << ", solve excess per line " << format_g17(a.solve_excess_per_line()) << "\n";
    }
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unconditionally stable implicit FDTD solver"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Common common;
  app.add_option("--threads", common.threads, "Worker threads (default 1)")->check(CLI::PositiveNumber);
  app.add_option("--out", common.out, "Output directory");
  app.add_option("--seed", common.seed, "Random seed");

  std::string config_path;
  std::vector<std::string> sets;
  auto* run = app.add_subcommand("run", "Run a configured simulation");
  run->add_option("--config", config_path, "key = value configuration file");
  run->add_option("--set", sets, "Override one key, key=value (repeatable)")->take_all();

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "Run verification suites; no names lists them");
  verify->add_option("suites", suites, "Suite names, or all");

  std::string scheme_name;
  std::string form_name;
  bool csv = false;
  bool per_step = false;
  bool audit = false;
  auto* cost = app.add_subcommand("cost", "Print the operation-count model");
  cost->add_option("scheme", scheme_name, "Scheme (default: the eight table columns)");
  cost->add_option("formulation", form_name, "original or fundamental");
  cost->add_flag("--csv", csv, "CSV instead of the aligned table");
  cost->add_flag("--per-step-magnetic", per_step, "Count the per-step magnetic update");
  cost->add_flag("--audit", audit, "Cross-check with a counted run on 8^3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*run) return do_run(common, config_path, sets);
    if (*verify) return do_verify(common, suites);
    if (*cost) return do_cost(scheme_name, form_name, csv, per_step, audit);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return usage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure at step " << e.step() << ": " << e.what() << "\n";
    return numerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
