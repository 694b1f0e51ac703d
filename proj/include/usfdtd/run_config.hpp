#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "usfdtd/grid.hpp"
#include "usfdtd/schemes.hpp"

namespace usfdtd {

/// Invalid configuration; what() starts with the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class Waveform { sinusoid, gaussian };

/// Soft electric source at one sample.
/// sinusoid: amplitude sin(2 pi frequency t)
/// gaussian: amplitude exp(-((t - delay) / width)^2)
struct SourceSpec {
  Component component = Component::Ez;
  Index3 at{};
  Waveform waveform = Waveform::sinusoid;
  double amplitude = 1.0;
  double frequency = 0.0;
  double delay = 0.0;
  double width = 0.0;

  double value(double t) const;
};

struct ProbeSpec {
  Component component = Component::Ez;
  Index3 at{};

  std::string label() const;
};

struct RunConfig {
  YeeGrid grid = YeeGrid::cube(8, 1e-3);
  Medium medium = Medium::vacuum();
  std::optional<double> dt;
  std::optional<double> cfl_number;
  SchemeId scheme = SchemeId::ADI;
  Formulation formulation = Formulation::Fundamental;
  MagneticUpdate magnetic = MagneticUpdate::combined;
  long steps = 100;
  std::optional<SourceSpec> source;
  std::vector<ProbeSpec> probes;
  /// Write a snapshot every this many steps; absent means never.
  std::optional<long> snapshot_every;
  std::string out_dir = "usfdtd_out";
  std::uint64_t seed = 1;
  /// zero, random (uniform in [-1, 1] from seed), or a snapshot path.
  std::string initial = "zero";
  int threads = 1;

  Problem problem() const;
  TimeConfig time() const;
  /// Checks every cross-field invariant; throws ConfigError.
  void validate() const;
  /// Resolved key/value pairs, in key order, parseable by apply_settings().
  std::map<std::string, std::string> echo() const;
};

/// key = value lines; '#' starts a comment; later keys win.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Applies key/value settings over `base`. Unknown keys are errors.
RunConfig apply_settings(RunConfig base, const std::map<std::string, std::string>& kv);

/// Splits a "--set key=value" argument.
std::pair<std::string, std::string> split_assignment(const std::string& arg);

const std::vector<std::string>& config_keys();

}  // namespace usfdtd
