#include "usfdtd/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "usfdtd/text.hpp"

namespace usfdtd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_none(const std::string& v) { return v.empty() || v == "none"; }

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc{} || r.ptr != v.data() + v.size() || !std::isfinite(x)) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
  return x;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc{} || r.ptr != v.data() + v.size()) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
  return x;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const long n = to_int<long>(key, v);
  if (n < 1) throw ConfigError(key, "must be at least 1");
  return static_cast<std::size_t>(n);
}

double to_positive(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (!(x > 0.0)) throw ConfigError(key, "must be positive");
  return x;
}

Index3 to_index(const std::string& key, const std::string& v) {
  std::array<std::size_t, 3> n{};
  std::size_t part = 0;
  std::string cur;
  for (char ch : v + ",") {
    if (ch != ',') {
      cur += ch;
      continue;
    }
    if (part == 3) throw ConfigError(key, "expected i,j,k, got '" + v + "'");
    const long x = to_int<long>(key, trim(cur));
    if (x < 0) throw ConfigError(key, "indices must be non-negative");
    n[part++] = static_cast<std::size_t>(x);
    cur.clear();
  }
  if (part != 3) throw ConfigError(key, "expected i,j,k, got '" + v + "'");
  return {n[0], n[1], n[2]};
}

Component to_component(const std::string& key, const std::string& v) {
  try {
    return parse_component(v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

std::string index_text(const Index3& at) {
  return std::to_string(at.i) + "," + std::to_string(at.j) + "," + std::to_string(at.k);
}

bool inside(const YeeGrid& grid, Component c, const Index3& at) {
  const Extent3 e = component_extent(grid, c);
  return at.i < e.n0 && at.j < e.n1 && at.k < e.n2;
}

SourceSpec& source_of(RunConfig& c) {
  if (!c.source) c.source = SourceSpec{};
  return *c.source;
}

}  // namespace

double SourceSpec::value(double t) const {
  if (waveform == Waveform::sinusoid) {
    return amplitude * std::sin(2.0 * std::numbers::pi * frequency * t);
  }
  const double s = (t - delay) / width;
  return amplitude * std::exp(-s * s);
}

std::string ProbeSpec::label() const {
  return std::string(to_string(component)) + "_" + std::to_string(at.i) + "_" +
         std::to_string(at.j) + "_" + std::to_string(at.k);
}

Problem RunConfig::problem() const { return Problem{grid, medium, time().dt}; }

TimeConfig RunConfig::time() const {
  if (dt.has_value() == cfl_number.has_value()) {
    throw ConfigError(dt ? "dt" : "cfl_number", "give exactly one of dt and cfl_number");
  }
  return dt ? TimeConfig::from_dt(*dt, grid, medium)
            : TimeConfig::from_cfl(*cfl_number, grid, medium);
}

void RunConfig::validate() const {
  if (grid.nx < 2 || grid.ny < 2 || grid.nz < 2) throw ConfigError("nx", "need at least 2 cells per axis");
  time();
  if (steps < 0) throw ConfigError("steps", "must be non-negative");
  if (threads < 1) throw ConfigError("threads", "must be at least 1");
  if (snapshot_every && *snapshot_every < 1) throw ConfigError("snapshot_every", "must be at least 1");
  if (source) {
    if (!is_electric(source->component)) {
      throw ConfigError("source_component", "sources drive electric components only");
    }
    if (!inside(grid, source->component, source->at)) {
      throw ConfigError("source_index", "outside the interior of " +
                                            std::string(to_string(source->component)));
    }
    if (source->waveform == Waveform::gaussian && !(source->width > 0.0)) {
      throw ConfigError("source_width", "gaussian pulse needs a positive width");
    }
    if (source->waveform == Waveform::sinusoid && !(source->frequency > 0.0)) {
      throw ConfigError("source_frequency", "sinusoid needs a positive frequency");
    }
  }
  for (const ProbeSpec& p : probes) {
    if (!inside(grid, p.component, p.at)) {
      throw ConfigError("probes", p.label() + " is outside the interior of " +
                                      std::string(to_string(p.component)));
    }
  }
  if (initial.empty()) {
    throw ConfigError("initial", "expected zero, random or a snapshot path");
  }
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> kv;
  kv["nx"] = std::to_string(grid.nx);
  kv["ny"] = std::to_string(grid.ny);
  kv["nz"] = std::to_string(grid.nz);
  kv["dx"] = format_g17(grid.dx);
  kv["dy"] = format_g17(grid.dy);
  kv["dz"] = format_g17(grid.dz);
  kv["epsilon"] = format_g17(medium.epsilon);
  kv["mu"] = format_g17(medium.mu);
  kv["dt"] = dt ? format_g17(*dt) : "none";
  kv["cfl_number"] = cfl_number ? format_g17(*cfl_number) : "none";
  kv["scheme"] = to_string(scheme);
  kv["formulation"] = to_string(formulation);
  kv["magnetic"] = magnetic == MagneticUpdate::combined ? "combined" : "per_step";
  kv["steps"] = std::to_string(steps);
  if (source) {
    kv["source_component"] = to_string(source->component);
    kv["source_index"] = index_text(source->at);
    kv["source_waveform"] = source->waveform == Waveform::sinusoid ? "sinusoid" : "gaussian";
    kv["source_amplitude"] = format_g17(source->amplitude);
    kv["source_frequency"] = format_g17(source->frequency);
    kv["source_delay"] = format_g17(source->delay);
    kv["source_width"] = format_g17(source->width);
  } else {
    kv["source_waveform"] = "none";
  }
  std::string ps;
  for (const ProbeSpec& p : probes) {
    if (!ps.empty()) ps += ";";
    ps += std::string(to_string(p.component)) + "@" + index_text(p.at);
  }
  kv["probes"] = ps.empty() ? "none" : ps;
  kv["snapshot_every"] = snapshot_every ? std::to_string(*snapshot_every) : "none";
  kv["out_dir"] = out_dir;
  kv["seed"] = std::to_string(seed);
  kv["initial"] = initial;
  kv["threads"] = std::to_string(threads);
  return kv;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "nx", "ny", "nz", "dx", "dy", "dz", "epsilon", "mu", "dt", "cfl_number", "scheme",
      "formulation", "magnetic", "steps", "source_component", "source_index", "source_waveform",
      "source_amplitude", "source_frequency", "source_delay", "source_width", "probes",
      "snapshot_every", "out_dir", "seed", "initial", "threads"};
  return keys;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number), "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(number), "missing key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_key_values(text.str());
}

std::pair<std::string, std::string> split_assignment(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || trim(arg.substr(0, eq)).empty()) {
    throw ConfigError("set", "expected key=value, got '" + arg + "'");
  }
  return {trim(arg.substr(0, eq)), trim(arg.substr(eq + 1))};
}

RunConfig apply_settings(RunConfig c, const std::map<std::string, std::string>& kv) {
  // Waveform first so that "none" drops the source before its parameters land.
  if (auto it = kv.find("source_waveform"); it != kv.end()) {
    if (is_none(it->second)) {
      c.source.reset();
    } else if (it->second == "sinusoid") {
      source_of(c).waveform = Waveform::sinusoid;
    } else if (it->second == "gaussian") {
      source_of(c).waveform = Waveform::gaussian;
    } else {
      throw ConfigError("source_waveform", "expected sinusoid, gaussian or none");
    }
  }
  for (const auto& [key, v] : kv) {
    if (key == "nx") c.grid.nx = to_count(key, v);
    else if (key == "ny") c.grid.ny = to_count(key, v);
    else if (key == "nz") c.grid.nz = to_count(key, v);
    else if (key == "dx") c.grid.dx = to_positive(key, v);
    else if (key == "dy") c.grid.dy = to_positive(key, v);
    else if (key == "dz") c.grid.dz = to_positive(key, v);
    else if (key == "epsilon") c.medium.epsilon = to_positive(key, v);
    else if (key == "mu") c.medium.mu = to_positive(key, v);
    else if (key == "dt") c.dt = is_none(v) ? std::nullopt : std::optional(to_positive(key, v));
    else if (key == "cfl_number") {
      c.cfl_number = is_none(v) ? std::nullopt : std::optional(to_positive(key, v));
    } else if (key == "scheme") {
      try {
        c.scheme = parse_scheme(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
      }
    } else if (key == "formulation") {
      try {
        c.formulation = parse_formulation(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
      }
    } else if (key == "magnetic") {
      if (v == "combined") c.magnetic = MagneticUpdate::combined;
      else if (v == "per_step") c.magnetic = MagneticUpdate::per_step;
      else throw ConfigError(key, "expected combined or per_step");
    } else if (key == "steps") {
      c.steps = to_int<long>(key, v);
      if (c.steps < 0) throw ConfigError(key, "must be non-negative");
    } else if (key == "source_waveform") {
      continue;
    } else if (key.rfind("source_", 0) == 0) {
      if (!c.source) {
        if (!kv.contains("source_waveform")) {
          throw ConfigError(key, "set source_waveform before source parameters");
        }
        continue;  // waveform none: parameters are ignored
      }
      SourceSpec& s = *c.source;
      if (key == "source_component") s.component = to_component(key, v);
      else if (key == "source_index") s.at = to_index(key, v);
      else if (key == "source_amplitude") s.amplitude = to_double(key, v);
      else if (key == "source_frequency") s.frequency = to_double(key, v);
      else if (key == "source_delay") s.delay = to_double(key, v);
      else if (key == "source_width") s.width = to_double(key, v);
      else throw ConfigError(key, "unknown key");
    } else if (key == "probes") {
      c.probes.clear();
      if (is_none(v)) continue;
      std::string item;
      std::istringstream in(v);
      while (std::getline(in, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto at = item.find('@');
        if (at == std::string::npos) throw ConfigError(key, "expected C@i,j,k, got '" + item + "'");
        c.probes.push_back({to_component(key, trim(item.substr(0, at))),
                            to_index(key, trim(item.substr(at + 1)))});
      }
    } else if (key == "snapshot_every") {
      if (is_none(v)) {
        c.snapshot_every.reset();
      } else {
        c.snapshot_every = to_int<long>(key, v);
        if (*c.snapshot_every < 1) throw ConfigError(key, "must be at least 1");
      }
    } else if (key == "out_dir") {
      if (v.empty()) throw ConfigError(key, "must not be empty");
      c.out_dir = v;
    } else if (key == "seed") {
      c.seed = to_int<std::uint64_t>(key, v);
    } else if (key == "initial") {
      if (v.empty()) throw ConfigError(key, "expected zero, random or a snapshot path");
      c.initial = v;
    } else if (key == "threads") {
      c.threads = to_int<int>(key, v);
      if (c.threads < 1) throw ConfigError(key, "must be at least 1");
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  return c;
}

}  // namespace usfdtd
