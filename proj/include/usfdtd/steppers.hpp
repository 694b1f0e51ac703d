#pragma once

// Stand-alone pieces of the steppers: input/output processing, the LOD to
// ADI conversion and one-shot Crank-Nicolson steps.

#include "usfdtd/grid.hpp"
#include "usfdtd/schemes.hpp"

namespace usfdtd {

/// Fundamental ADI starting state: doubled field 2 u0 and v = (I - dt/2 B) u0.
struct AdiFundamentalState {
  FieldSet doubled;
  AuxFieldSet aux;
};

AdiFundamentalState adi_fundamental_init(const FieldSet& u0, const Problem& problem);

/// Physical fields from a doubled set.
FieldSet adi_output(const FieldSet& doubled);

/// u^{1/4} from u^0: one B half-procedure of dt/4 in the requested form.
FieldSet lod2_input(const FieldSet& u0, Formulation form, const Problem& problem);

/// u^{n+1} from u^{n+1/4}, the inverse of lod2_input.
FieldSet lod2_output(const FieldSet& quarter, Formulation form, const Problem& problem);

/// (1/2 I + dt/4 B) v. Seeding fundamental LOD1 with the conversion of a
/// fundamental ADI doubled field makes the LOD1 auxiliary vectors track the
/// ADI doubled fields step for step.
FieldSet lod_to_adi_convert(const ComponentArrays& v, const Problem& problem);

/// One Crank-Nicolson step by sparse direct solve. Throws CapabilityError
/// above kCrankNicolsonMaxUnknowns.
FieldSet crank_nicolson_reference_step(const FieldSet& u, Formulation form,
                                       const Problem& problem);

}  // namespace usfdtd
