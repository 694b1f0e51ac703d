#include <algorithm>
#include <cctype>
#include <string>

#include "usfdtd/schemes.hpp"

namespace usfdtd {

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

}  // namespace

const char* to_string(SchemeId s) {
  switch (s) {
    case SchemeId::ADI:
      return "adi";
    case SchemeId::LOD1:
      return "lod1";
    case SchemeId::SS2:
      return "ss2";
    case SchemeId::LOD2:
      return "lod2";
    case SchemeId::DYAKONOV:
      return "dyakonov";
    case SchemeId::DOUGLAS_GUNN:
      return "douglas-gunn";
    case SchemeId::CRANK_NICOLSON_REF:
      return "crank-nicolson";
  }
  return "?";
}

const char* to_string(Formulation f) {
  return f == Formulation::Original ? "original" : "fundamental";
}

SchemeId parse_scheme(std::string_view name) {
  const std::string n = lowered(name);
  for (SchemeId s : kSchemes) {
    if (n == to_string(s)) return s;
  }
  if (n == "ss1") return SchemeId::LOD1;
  if (n == "dy") return SchemeId::DYAKONOV;
  if (n == "dg" || n == "douglas_gunn") return SchemeId::DOUGLAS_GUNN;
  if (n == "cn" || n == "crank_nicolson") return SchemeId::CRANK_NICOLSON_REF;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

Formulation parse_formulation(std::string_view name) {
  const std::string n = lowered(name);
  if (n == "original" || n == "org") return Formulation::Original;
  if (n == "fundamental" || n == "new") return Formulation::Fundamental;
  throw std::invalid_argument("unknown formulation '" + std::string(name) + "'");
}

Stepper::Stepper(SchemeId scheme, Formulation form, const Problem& problem)
    : scheme_(scheme), form_(form), problem_(problem) {
  if (!(problem.dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(problem.medium.epsilon > 0.0) || !(problem.medium.mu > 0.0)) {
    throw std::invalid_argument("medium parameters must be positive");
  }
}

void Stepper::require_initialized(const char* what) const {
  if (!initialized_) throw StateError(std::string(what) + " called before initialize()");
}

void Stepper::initialize(const FieldSet& u0) {
  if (!(u0.grid() == problem_.grid)) throw DimensionError("initial fields are on another grid");
  if (!u0.all_finite()) throw std::invalid_argument("initial fields contain non-finite values");
  do_initialize(to_physical(u0));
  step_ = 0;
  initialized_ = true;
}

void Stepper::step() {
  require_initialized("step()");
  do_step();
  ++step_;
}

void Stepper::advance(long steps) {
  for (long n = 0; n < steps; ++n) step();
}

FieldSet Stepper::output() const {
  require_initialized("output()");
  return do_output();
}

void Stepper::add_electric_source(Component c, const Index3& at, double value) {
  require_initialized("add_electric_source()");
  if (!is_electric(c)) throw std::invalid_argument("sources drive electric components only");
  const Extent3 e = component_extent(problem_.grid, c);
  if (at.i >= e.n0 || at.j >= e.n1 || at.k >= e.n2) {
    throw DimensionError(std::string("source index outside the ") + to_string(c) + " array");
  }
  do_add_source(c, at, value);
}

std::vector<FieldSet> Stepper::checkpoint() const {
  require_initialized("checkpoint()");
  return do_checkpoint();
}

void Stepper::restore(std::span<const FieldSet> state, long step_index) {
  for (const FieldSet& f : state) {
    if (!(f.grid() == problem_.grid)) throw DimensionError("checkpoint is on another grid");
  }
  do_restore(state);
  step_ = step_index;
  initialized_ = true;
}

}  // namespace usfdtd
