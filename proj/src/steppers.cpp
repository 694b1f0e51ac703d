#include "usfdtd/steppers.hpp"

#include <string>
#include <utility>
#include <vector>

#include "crank_nicolson.hpp"
#include "engine.hpp"
#include "usfdtd/operators.hpp"

namespace usfdtd {

namespace {

using detail::Cross;
using detail::SplitEngine;
constexpr SplitOperator kA = SplitOperator::A;
constexpr SplitOperator kB = SplitOperator::B;

void expect_sets(std::span<const FieldSet> state, std::size_t n) {
  if (state.size() != n) {
    throw std::invalid_argument("checkpoint holds " + std::to_string(state.size()) +
                                " field sets, expected " + std::to_string(n));
  }
}

Index3 step_up(Index3 p, Axis a) {
  switch (a) {
    case Axis::x:
      ++p.i;
      break;
    case Axis::y:
      ++p.j;
      break;
    case Axis::z:
      ++p.k;
      break;
  }
  return p;
}

// Calls fn(h, index, weight) for the two magnetic samples of B du where du
// is `value` on electric component c at `at`.
template <class Fn>
void b_footprint(Component c, const Index3& at, double value, const Problem& p, Fn&& fn) {
  const Coupling& cb = coupling_of(kB, c);
  const double w = cb.sign * value / (p.medium.mu * p.grid.spacing(cb.axis));
  fn(cb.h, at, w);
  fn(cb.h, step_up(at, cb.axis), -w);
}

template <class T>
class EngineStepper : public Stepper {
 public:
  EngineStepper(SchemeId s, Formulation f, const Problem& p, const StepperOptions& o)
      : Stepper(s, f, p), engine_(p, o.count_flops ? 1 : o.threads) {}

  const FlopLedger* flop_ledger() const override {
    if constexpr (std::is_same_v<T, CountedReal>) return &engine_.ledger();
    return nullptr;
  }
  void reset_flop_ledger() override { engine_.ledger().reset(); }

 protected:
  SplitEngine<T> engine_;
};

struct OriginalStage {
  SplitOperator op;
  Cross cross;
  double theta;
};

// Original forms built from a fixed sequence of implicit procedures on u.
template <class T>
class OriginalSequence : public EngineStepper<T> {
 public:
  OriginalSequence(SchemeId s, const Problem& p, const StepperOptions& o,
                   std::vector<OriginalStage> stages)
      : EngineStepper<T>(s, Formulation::Original, p, o), stages_(std::move(stages)) {}

 protected:
  void do_initialize(const FieldSet& u0) override {
    p_ = u0;
    q_ = FieldSet(u0.grid());
  }

  void do_step() override {
    for (const OriginalStage& st : stages_) {
      this->engine_.original(st.op, st.cross, st.theta, p_, q_);
      std::swap(p_, q_);
    }
  }

  FieldSet do_output() const override { return p_; }

  void do_add_source(Component c, const Index3& at, double value) override {
    p_[c][at] += value;
  }

  std::vector<FieldSet> do_checkpoint() const override { return {p_}; }

  void do_restore(std::span<const FieldSet> state) override {
    expect_sets(state, 1);
    p_ = state[0];
    q_ = FieldSet(p_.grid());
  }

  std::vector<OriginalStage> stages_;
  FieldSet p_;
  FieldSet q_;
};

// LOD2 keeps u^{n+1/4}; a source meant for the physical field enters through
// the input map, whose response to a unit impulse is cached per sample.
class QuarterImpulses {
 public:
  const FieldSet& response(Component c, const Index3& at, Formulation form, const Problem& p) {
    for (const Entry& e : cache_) {
      if (e.c == c && e.at == at) return e.response;
    }
    FieldSet unit(p.grid);
    unit[c][at] = 1.0;
    cache_.push_back({c, at, lod2_input(unit, form, p)});
    return cache_.back().response;
  }

 private:
  struct Entry {
    Component c;
    Index3 at;
    FieldSet response;
  };
  std::vector<Entry> cache_;
};

template <class T>
class Lod2Original final : public OriginalSequence<T> {
 public:
  Lod2Original(const Problem& p, const StepperOptions& o)
      : OriginalSequence<T>(SchemeId::LOD2, p, o,
                            {{kA, Cross::same, p.dt / 2}, {kB, Cross::same, p.dt / 2}}) {}

 protected:
  void do_initialize(const FieldSet& u0) override {
    OriginalSequence<T>::do_initialize(lod2_input(u0, Formulation::Original, this->problem()));
  }
  FieldSet do_output() const override {
    return lod2_output(this->p_, Formulation::Original, this->problem());
  }
  void do_add_source(Component c, const Index3& at, double value) override {
    this->p_.axpy(value, impulses_.response(c, at, Formulation::Original, this->problem()));
  }

 private:
  QuarterImpulses impulses_;
};

struct FundamentalStage {
  SplitOperator op;
  double theta;
};

// Fundamental LOD-type forms: each procedure solves (1/2 I - theta/2 X) v = u
// and sets u = v - u. The state is always the physical field.
template <class T>
class FundamentalSequence : public EngineStepper<T> {
 public:
  FundamentalSequence(SchemeId s, const Problem& p, const StepperOptions& o,
                      std::vector<FundamentalStage> stages)
      : EngineStepper<T>(s, Formulation::Fundamental, p, o),
        stages_(std::move(stages)),
        mode_(o.magnetic) {}

  std::optional<AuxFieldSet> auxiliary() const override {
    if (!stepped_) return std::nullopt;
    AuxFieldSet v(p_.grid());
    static_cast<ComponentArrays&>(v) = p_;
    v.axpy(1.0, q_);
    return v;
  }

 protected:
  void do_initialize(const FieldSet& u0) override {
    p_ = u0;
    q_ = FieldSet(u0.grid());
    stepped_ = false;
  }

  void do_step() override {
    for (const FundamentalStage& st : stages_) {
      this->engine_.lod_fundamental(st.op, st.theta, p_, q_, mode_);
      std::swap(p_, q_);
    }
    stepped_ = true;
  }

  FieldSet do_output() const override { return p_; }

  void do_add_source(Component c, const Index3& at, double value) override {
    p_[c][at] += value;
    stepped_ = false;
  }

  std::vector<FieldSet> do_checkpoint() const override { return {p_, q_}; }

  void do_restore(std::span<const FieldSet> state) override {
    expect_sets(state, 2);
    p_ = state[0];
    q_ = state[1];
    stepped_ = true;
  }

  std::vector<FundamentalStage> stages_;
  MagneticUpdate mode_;
  FieldSet p_;
  FieldSet q_;
  bool stepped_ = false;
};

template <class T>
class Lod2Fundamental final : public FundamentalSequence<T> {
 public:
  Lod2Fundamental(const Problem& p, const StepperOptions& o)
      : FundamentalSequence<T>(SchemeId::LOD2, p, o, {{kA, p.dt / 2}, {kB, p.dt / 2}}) {}

  std::optional<AuxFieldSet> auxiliary() const override { return std::nullopt; }

 protected:
  void do_initialize(const FieldSet& u0) override {
    FundamentalSequence<T>::do_initialize(
        lod2_input(u0, Formulation::Fundamental, this->problem()));
  }
  FieldSet do_output() const override {
    return lod2_output(this->p_, Formulation::Fundamental, this->problem());
  }
  void do_add_source(Component c, const Index3& at, double value) override {
    this->p_.axpy(value, impulses_.response(c, at, Formulation::Fundamental, this->problem()));
  }

 private:
  QuarterImpulses impulses_;
};

// Fundamental ADI engine shared by ADI (sigma = 2, doubled field),
// D'Yakonov (sigma = 1) and Douglas-Gunn (ADI plus increment extraction).
//
// Two six-component sets trade the field and auxiliary roles every
// procedure; at the start of a step p_ holds the field and q_ the auxiliary
// vector. With combined magnetic updates neither set stores H: the
// magnetic slots of p_ carry h = (field - aux)_H instead.
template <class T>
class AdiFundamental final : public EngineStepper<T> {
 public:
  AdiFundamental(SchemeId s, double sigma, const Problem& p, const StepperOptions& o)
      : EngineStepper<T>(s, Formulation::Fundamental, p, o),
        sigma_(sigma),
        tau_(p.dt / 2),
        combined_(o.magnetic == MagneticUpdate::combined),
        track_increments_(s == SchemeId::DOUGLAS_GUNN) {}

  std::optional<AuxFieldSet> auxiliary() const override {
    AuxFieldSet v(q_.grid());
    for (Component c : kElectric) v[c] = q_[c];
    if (combined_) {
      const FieldSet u = physical(kB, p_);
      for (Component c : kMagnetic) {
        v[c] = u[c];
        const auto hv = p_[c].values();
        auto out = v[c].values();
        for (std::size_t n = 0; n < out.size(); ++n) out[n] = sigma_ * out[n] - hv[n];
      }
    } else {
      for (Component c : kMagnetic) v[c] = q_[c];
    }
    return v;
  }

  std::optional<Increments> increments() const override {
    if (!track_increments_ || !have_increments_) return std::nullopt;
    return increments_;
  }

 protected:
  void do_initialize(const FieldSet& u0) override {
    SplitEngine<double> e(this->problem(), 1);
    p_ = u0;
    p_.scale(sigma_);
    p_.scaling = sigma_ == 2.0 ? Scaling::doubled : Scaling::physical;
    q_ = FieldSet(u0.grid());
    e.shift(kB, -tau_, u0, q_);
    q_.scale(sigma_ / 2);
    if (combined_) {
      FieldSet t(u0.grid());
      e.shift(kB, tau_, u0, t);
      for (Component c : kMagnetic) {
        p_[c] = t[c];
        for (double& x : p_[c].values()) x *= sigma_ / 2;
        q_[c].fill(0.0);
      }
    }
    have_increments_ = false;
  }

  void do_step() override {
    ComponentArrays* h = combined_ ? &p_ : nullptr;
    FieldSet start;
    if (track_increments_) start = doubled(physical(kB, p_));
    this->engine_.adi_fundamental(kA, tau_, p_, q_, h);
    if (track_increments_) {
      increments_.half = doubled(physical(kA, q_));
      increments_.half.axpy(-1.0, start);
      increments_.half.scaling = Scaling::physical;
    }
    this->engine_.adi_fundamental(kB, tau_, q_, p_, h);
    if (track_increments_) {
      increments_.full = doubled(physical(kB, p_));
      increments_.full.axpy(-1.0, start);
      increments_.full.scale(0.5);
      increments_.full.scaling = Scaling::physical;
      have_increments_ = true;
    }
  }

  FieldSet do_output() const override { return physical(kB, p_); }

  void do_add_source(Component c, const Index3& at, double value) override {
    p_[c][at] += sigma_ * value;
    q_[c][at] += sigma_ / 2 * value;
    const double k = sigma_ / 2 * tau_;
    b_footprint(c, at, value, this->problem(), [&](Component hc, const Index3& q, double w) {
      if (combined_) {
        p_[hc][q] += k * w;
      } else {
        q_[hc][q] -= k * w;
      }
    });
  }

  std::vector<FieldSet> do_checkpoint() const override { return {p_, q_}; }

  void do_restore(std::span<const FieldSet> state) override {
    expect_sets(state, 2);
    p_ = state[0];
    q_ = state[1];
    have_increments_ = false;
  }

 private:
  // Physical fields held in `slot` right after a procedure in `last`.
  FieldSet physical(SplitOperator last, const FieldSet& slot) const {
    FieldSet u(slot.grid());
    for (Component c : kElectric) {
      u[c] = slot[c];
      for (double& x : u[c].values()) x /= sigma_;
    }
    if (!combined_) {
      for (Component c : kMagnetic) {
        u[c] = slot[c];
        for (double& x : u[c].values()) x /= sigma_;
      }
      return u;
    }
    // h = sigma/2 [(I + tau X) u]_H, so u_H = 2/sigma h - tau (X u)_H.
    const FieldSet xu = apply_split(last, u, this->problem().medium);
    for (Component c : kMagnetic) {
      const auto hv = p_[c].values();
      const auto xv = xu[c].values();
      auto out = u[c].values();
      for (std::size_t n = 0; n < out.size(); ++n) out[n] = 2.0 / sigma_ * hv[n] - tau_ * xv[n];
    }
    return u;
  }

  static FieldSet doubled(FieldSet u) {
    u.scale(2.0);
    u.scaling = Scaling::doubled;
    return u;
  }

  double sigma_;
  double tau_;
  bool combined_;
  bool track_increments_;
  bool have_increments_ = false;
  Increments increments_;
  FieldSet p_;
  FieldSet q_;
};

template <class T>
class DyakonovOriginal final : public OriginalSequence<T> {
 public:
  DyakonovOriginal(const Problem& p, const StepperOptions& o)
      : OriginalSequence<T>(SchemeId::DYAKONOV, p, o, {}) {}

 protected:
  void do_step() override {
    const double tau = this->problem().dt / 2;
    this->engine_.shift(kB, tau, this->p_, this->q_);
    this->engine_.original(kA, Cross::same, tau, this->q_, this->p_);
    this->engine_.original(kB, Cross::none, tau, this->p_, this->q_);
    std::swap(this->p_, this->q_);
  }
};

template <class T>
class DouglasGunnOriginal final : public OriginalSequence<T> {
 public:
  DouglasGunnOriginal(const Problem& p, const StepperOptions& o)
      : OriginalSequence<T>(SchemeId::DOUGLAS_GUNN, p, o, {}) {}

 protected:
  void do_step() override {
    const double tau = this->problem().dt / 2;
    this->engine_.curl_scaled(this->problem().dt, this->p_, this->q_);
    this->engine_.original(kA, Cross::none, tau, this->q_, this->q_);
    this->engine_.original(kB, Cross::none, tau, this->q_, this->q_);
    this->p_.axpy(1.0, this->q_);
  }
};

template <class T>
std::unique_ptr<Stepper> build(SchemeId s, Formulation f, const Problem& p,
                               const StepperOptions& o) {
  const double half = p.dt / 2;
  const double quarter = p.dt / 4;
  const bool org = f == Formulation::Original;
  switch (s) {
    case SchemeId::ADI:
      if (org) {
        return std::make_unique<OriginalSequence<T>>(
            s, p, o, std::vector<OriginalStage>{{kA, Cross::other, half}, {kB, Cross::other, half}});
      }
      return std::make_unique<AdiFundamental<T>>(s, 2.0, p, o);
    case SchemeId::LOD1:
      if (org) {
        return std::make_unique<OriginalSequence<T>>(
            s, p, o, std::vector<OriginalStage>{{kA, Cross::same, half}, {kB, Cross::same, half}});
      }
      return std::make_unique<FundamentalSequence<T>>(
          s, p, o, std::vector<FundamentalStage>{{kA, half}, {kB, half}});
    case SchemeId::SS2:
      if (org) {
        return std::make_unique<OriginalSequence<T>>(
            s, p, o,
            std::vector<OriginalStage>{
                {kA, Cross::same, quarter}, {kB, Cross::same, half}, {kA, Cross::same, quarter}});
      }
      return std::make_unique<FundamentalSequence<T>>(
          s, p, o, std::vector<FundamentalStage>{{kA, quarter}, {kB, half}, {kA, quarter}});
    case SchemeId::LOD2:
      if (org) return std::make_unique<Lod2Original<T>>(p, o);
      return std::make_unique<Lod2Fundamental<T>>(p, o);
    case SchemeId::DYAKONOV:
      if (org) return std::make_unique<DyakonovOriginal<T>>(p, o);
      return std::make_unique<AdiFundamental<T>>(s, 1.0, p, o);
    case SchemeId::DOUGLAS_GUNN:
      if (org) return std::make_unique<DouglasGunnOriginal<T>>(p, o);
      return std::make_unique<AdiFundamental<T>>(s, 2.0, p, o);
    case SchemeId::CRANK_NICOLSON_REF:
      break;
  }
  throw CapabilityError("no finite-difference stepper for this scheme");
}

}  // namespace

std::unique_ptr<Stepper> make_stepper(SchemeId scheme, Formulation form, const Problem& problem,
                                      const StepperOptions& options) {
  if (scheme == SchemeId::CRANK_NICOLSON_REF) {
    if (options.count_flops) {
      throw CapabilityError("flop counting is not available for the Crank-Nicolson reference");
    }
    return detail::make_crank_nicolson(form, problem);
  }
  if (options.threads < 1) throw std::invalid_argument("thread count must be at least 1");
  if (options.count_flops) return build<CountedReal>(scheme, form, problem, options);
  return build<double>(scheme, form, problem, options);
}

AdiFundamentalState adi_fundamental_init(const FieldSet& u0, const Problem& problem) {
  const FieldSet u = to_physical(u0);
  SplitEngine<double> e(problem, 1);
  AdiFundamentalState s{FieldSet(u.grid(), Scaling::doubled), AuxFieldSet(u.grid())};
  static_cast<ComponentArrays&>(s.doubled) = u;
  s.doubled.scale(2.0);
  e.shift(kB, -problem.dt / 2, u, s.aux);
  return s;
}

FieldSet adi_output(const FieldSet& doubled) {
  FieldSet u = doubled;
  u.scaling = Scaling::doubled;
  return to_physical(u);
}

FieldSet lod2_input(const FieldSet& u0, Formulation form, const Problem& problem) {
  const FieldSet u = to_physical(u0);
  SplitEngine<double> e(problem, 1);
  FieldSet out(u.grid());
  if (form == Formulation::Original) {
    e.original(kB, Cross::same, problem.dt / 4, u, out);
  } else {
    e.lod_fundamental(kB, problem.dt / 4, u, out, MagneticUpdate::combined);
  }
  return out;
}

FieldSet lod2_output(const FieldSet& quarter, Formulation form, const Problem& problem) {
  SplitEngine<double> e(problem, 1);
  FieldSet out(quarter.grid());
  if (form == Formulation::Original) {
    e.original(kB, Cross::same, -problem.dt / 4, quarter, out);
  } else {
    e.lod_fundamental(kB, -problem.dt / 4, quarter, out, MagneticUpdate::combined);
  }
  return out;
}

FieldSet lod_to_adi_convert(const ComponentArrays& v, const Problem& problem) {
  SplitEngine<double> e(problem, 1);
  FieldSet out(v.grid());
  e.shift(kB, problem.dt / 2, v, out);
  out.scale(0.5);
  return out;
}

}  // namespace usfdtd
