#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "usfdtd/counted.hpp"
#include "usfdtd/grid.hpp"

namespace usfdtd {

enum class SchemeId { ADI, LOD1, SS2, LOD2, DYAKONOV, DOUGLAS_GUNN, CRANK_NICOLSON_REF };

inline constexpr std::array<SchemeId, 7> kSchemes{
    SchemeId::ADI,      SchemeId::LOD1,         SchemeId::SS2,
    SchemeId::LOD2,     SchemeId::DYAKONOV,     SchemeId::DOUGLAS_GUNN,
    SchemeId::CRANK_NICOLSON_REF};

enum class Formulation { Original, Fundamental };

inline constexpr std::array<Formulation, 2> kFormulations{Formulation::Original,
                                                          Formulation::Fundamental};

const char* to_string(SchemeId s);
const char* to_string(Formulation f);
SchemeId parse_scheme(std::string_view name);
Formulation parse_formulation(std::string_view name);

/// How fundamental schemes advance the magnetic unknowns.
enum class MagneticUpdate {
  combined,  ///< fold the auxiliary h update into the explicit H update (fewest flops)
  per_step,  ///< form the auxiliary h and the field H separately every procedure
};

/// Thrown when a scheme, formulation or grid size is outside what is implemented.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a stepper is used before initialize().
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct StepperOptions {
  int threads = 1;
  MagneticUpdate magnetic = MagneticUpdate::combined;
  /// Run the kernels on CountedReal and keep a FlopLedger of the main iterations.
  bool count_flops = false;
};

/// Flops spent in main iterations, bucketed by the component being updated.
/// Electric components collect the implicit-update right-hand sides, magnetic
/// components the explicit updates. Tridiagonal sweeps are kept apart.
struct FlopLedger {
  std::array<flops::Tally, 6> update{};
  flops::Tally solve{};
  std::uint64_t lines = 0;
  std::uint64_t line_unknowns = 0;

  void reset() { *this = FlopLedger{}; }
};

/// Douglas-Gunn increments of the most recent step, in physical units:
/// half = (I - dt/2 A)^-1 dt (A + B) u^n, full = u^{n+1} - u^n.
struct Increments {
  FieldSet half;
  FieldSet full;
};

/// Common driver interface over every scheme and formulation.
///
/// initialize() takes physical fields at step 0; output() always returns the
/// physical fields at the current integer step, whatever the internal state.
class Stepper {
 public:
  Stepper(SchemeId scheme, Formulation form, const Problem& problem);
  virtual ~Stepper() = default;
  Stepper(const Stepper&) = delete;
  Stepper& operator=(const Stepper&) = delete;

  SchemeId scheme() const { return scheme_; }
  Formulation formulation() const { return form_; }
  const Problem& problem() const { return problem_; }
  long step_index() const { return step_; }
  double time() const { return static_cast<double>(step_) * problem_.dt; }
  bool initialized() const { return initialized_; }

  void initialize(const FieldSet& u0);
  void step();
  void advance(long steps);
  FieldSet output() const;

  /// Soft source: adds `value` to the physical electric component at `at`
  /// at the current step, keeping any auxiliary state consistent with it.
  void add_electric_source(Component c, const Index3& at, double value);

  /// Raw internal state, sufficient for a bit-exact restart via restore().
  std::vector<FieldSet> checkpoint() const;
  void restore(std::span<const FieldSet> state, long step_index);

  /// Auxiliary vector left by the latest implicit procedure, for the
  /// fundamental forms that define one.
  virtual std::optional<AuxFieldSet> auxiliary() const { return std::nullopt; }

  /// Douglas-Gunn fundamental form only, after at least one step.
  virtual std::optional<Increments> increments() const { return std::nullopt; }

  /// Present only when constructed with count_flops.
  virtual const FlopLedger* flop_ledger() const { return nullptr; }
  virtual void reset_flop_ledger() {}

 protected:
  virtual void do_initialize(const FieldSet& u0) = 0;
  virtual void do_step() = 0;
  virtual FieldSet do_output() const = 0;
  virtual void do_add_source(Component c, const Index3& at, double value) = 0;
  virtual std::vector<FieldSet> do_checkpoint() const = 0;
  virtual void do_restore(std::span<const FieldSet> state) = 0;

  void require_initialized(const char* what) const;

 private:
  SchemeId scheme_;
  Formulation form_;
  Problem problem_;
  long step_ = 0;
  bool initialized_ = false;
};

std::unique_ptr<Stepper> make_stepper(SchemeId scheme, Formulation form, const Problem& problem,
                                      const StepperOptions& options = {});

/// Largest unknown count accepted by the sparse-direct Crank-Nicolson reference.
inline constexpr std::size_t kCrankNicolsonMaxUnknowns = 10000;

}  // namespace usfdtd
