#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "usfdtd/run_config.hpp"

namespace usfdtd {

inline constexpr const char* kVersion = "0.1.0";

/// A non-finite field value appeared; step() is the offending step index.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(long step, const std::string& message)
      : std::runtime_error(message), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

struct RunSummary {
  long first_step = 0;
  long last_step = 0;
  double final_energy = 0.0;
  /// Paths written, relative to the output directory.
  std::vector<std::string> files;
};

/// Runs a configured simulation into config.out_dir:
///   probes.csv          step,time,<one column per probe>, one row per step
///   snapshot_<step>.bin every snapshot_every steps
///   manifest.json       config echo, versions, final energy, file list
///
/// A snapshot given as `initial` that was written by the same scheme,
/// formulation and magnetic update resumes its raw state and step index, so
/// the continued run matches an uninterrupted one bit for bit. Any other
/// snapshot supplies physical fields at step 0.
RunSummary run_simulation(const RunConfig& config);

}  // namespace usfdtd
