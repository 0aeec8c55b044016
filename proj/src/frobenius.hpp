#pragma once
// Frobenius functor on presented modules. F^e(M) keeps the ring R = P/J and
// the rank, raises each explicit relation row entrywise to the q = p^e power,
// and leaves the defining-ideal rows alone (they re-enter unpowered through
// the module machinery). Elements push forward entrywise on a lift.

#include "module.hpp"

namespace ptc {

PresentedModule frobenius_module(const PresentedModule& M, unsigned e);

// Entrywise q-th power of a coordinate lift; the image of v under the e-th
// Frobenius map M -> F^e(M) in these coordinates.
VecPoly frobenius_vec(const VecPoly& v, unsigned e);

// Generator list of N^[q] inside F^e(ambient).
std::vector<VecPoly> bracket_gens(const std::vector<VecPoly>& gens, unsigned e);

// N^[q] as a submodule of F^e(N.ambient()).
Submodule bracket_submodule(const Submodule& N, unsigned e);

}  // namespace ptc
