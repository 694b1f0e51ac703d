#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "usfdtd/grid.hpp"
#include "usfdtd/schemes.hpp"

namespace usfdtd {

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field data written by runs.
///
/// Layout, all little-endian: the 8-byte magic "USFDTDSN", u32 version,
/// u64 nx ny nz, f64 dx dy dz, i64 step, u32 scheme, u32 formulation,
/// u32 magnetic update, u32 set count, then per set a u32 scaling tag and
/// the six component arrays Ex..Hz as f64 in array order. Set 0 holds the
/// physical fields; any further sets are the stepper's raw state, which
/// restores a run bit for bit when scheme, formulation and magnetic update
/// match.
struct Snapshot {
  FieldSet fields;
  long step = 0;
  std::optional<SchemeId> scheme;
  Formulation formulation = Formulation::Original;
  MagneticUpdate magnetic = MagneticUpdate::combined;
  std::vector<FieldSet> state;
};

Snapshot capture(const Stepper& stepper, MagneticUpdate magnetic);

void write_snapshot(std::ostream& os, const Snapshot& s);
Snapshot read_snapshot(std::istream& is);

void save_snapshot(const std::string& path, const Snapshot& s);
Snapshot load_snapshot(const std::string& path);

}  // namespace usfdtd
