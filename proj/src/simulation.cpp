#include "usfdtd/simulation.hpp"

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "usfdtd/snapshot.hpp"
#include "usfdtd/text.hpp"

namespace usfdtd {

namespace {

std::string snapshot_name(long step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_%08ld.bin", step);
  return buf;
}

std::string eigen_version() {
  return std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
         std::to_string(EIGEN_MINOR_VERSION);
}

// Zero fields, seeded random fields, or a snapshot; returns the stepper ready
// to advance.
std::unique_ptr<Stepper> start(const RunConfig& config, const Problem& problem) {
  StepperOptions options;
  options.threads = config.threads;
  options.magnetic = config.magnetic;
  auto stepper = make_stepper(config.scheme, config.formulation, problem, options);
  if (config.initial == "zero") {
    stepper->initialize(FieldSet(problem.grid));
  } else if (config.initial == "random") {
    stepper->initialize(random_fields(problem.grid, config.seed));
  } else {
    Snapshot snap;
    try {
      snap = load_snapshot(config.initial);
    } catch (const SnapshotError& e) {
      throw ConfigError("initial", e.what());
    }
    if (!(snap.fields.grid() == problem.grid)) {
      throw ConfigError("initial", "snapshot grid differs from the configured grid");
    }
    const bool same = snap.scheme == config.scheme && snap.formulation == config.formulation &&
                      snap.magnetic == config.magnetic && !snap.state.empty();
    if (same) {
      stepper->restore(snap.state, snap.step);
    } else {
      stepper->initialize(snap.fields);
    }
  }
  return stepper;
}

}  // namespace

RunSummary run_simulation(const RunConfig& config) {
  config.validate();
  const Problem problem = config.problem();
  const TimeConfig time = config.time();
  auto stepper = start(config, problem);

  namespace fs = std::filesystem;
  const fs::path out(config.out_dir);
  fs::create_directories(out);

  RunSummary summary;
  summary.first_step = stepper->step_index();

  std::ofstream csv(out / "probes.csv", std::ios::binary | std::ios::trunc);
  if (!csv) throw ConfigError("out_dir", "cannot write probes.csv in '" + config.out_dir + "'");
  csv << "step,time";
  for (const ProbeSpec& p : config.probes) csv << ',' << p.label();
  csv << '\n';
  summary.files.push_back("probes.csv");

  FieldSet u = stepper->output();
  for (long n = 0; n < config.steps; ++n) {
    if (config.source) {
      const SourceSpec& s = *config.source;
      stepper->add_electric_source(s.component, s.at, s.value(stepper->time()));
    }
    stepper->step();
    u = stepper->output();
    const long step = stepper->step_index();
    if (!u.all_finite()) {
      csv.flush();
      throw NumericalError(step, "non-finite field value at step " + std::to_string(step));
    }
    csv << step << ',' << format_g17(stepper->time());
    for (const ProbeSpec& p : config.probes) {
      csv << ',' << format_g17(u[p.component](p.at.i, p.at.j, p.at.k));
    }
    csv << '\n';
    if (config.snapshot_every && step % *config.snapshot_every == 0) {
      const std::string name = snapshot_name(step);
      save_snapshot((out / name).string(), capture(*stepper, config.magnetic));
      summary.files.push_back(name);
    }
  }
  csv.close();

  summary.last_step = stepper->step_index();
  summary.final_energy = energy(u, problem.medium);

  nlohmann::ordered_json manifest;
  nlohmann::ordered_json echo;
  for (const auto& [k, v] : config.echo()) echo[k] = v;
  manifest["config"] = echo;
  manifest["versions"] = {{"usfdtd", kVersion},
                          {"compiler", __VERSION__},
                          {"eigen", eigen_version()},
                          {"snapshot_format", 1}};
  manifest["dt"] = format_g17(time.dt);
  manifest["cfl_number"] = format_g17(time.cfl_number);
  manifest["first_step"] = summary.first_step;
  manifest["last_step"] = summary.last_step;
  manifest["final_energy"] = format_g17(summary.final_energy);
  manifest["files"] = summary.files;
  std::ofstream(out / "manifest.json", std::ios::binary | std::ios::trunc) << manifest.dump(2)
                                                                          << '\n';
  summary.files.push_back("manifest.json");
  return summary;
}

}  // namespace usfdtd
