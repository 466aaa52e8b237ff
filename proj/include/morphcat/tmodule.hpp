#pragma once

#include "morphcat/morph.hpp"

namespace morphcat {

// A right module over the triangular matrix ring, stored structurally: the
// underlying module together with the right-multiplication operators of the
// matrix units. Operators compose left-to-right (m·(xy) = (m·x)·y), so the
// identity e11·e12·e22 = e12 reads e22 ∘ e12 ∘ e11 = e12 on operators.
struct TModuleRep {
    FPModule underlying;
    ModuleHom e11_action;
    ModuleHom e22_action;
    ModuleHom e12_action;
};

// Throws InvalidAction when the idempotent/annihilation identities fail.
void validate_t_module(const TModuleRep& n);

TModuleRep functor_F(const MorphObject& m);
ModuleHom functor_F_map(const MorphMap& u);  // block-diagonal on the underlying modules
MorphObject functor_G(const TModuleRep& n);

// Explicit isomorphism G(F(M)) -> M.
MorphMap roundtrip_iso(const MorphObject& m);

struct IdealCheckReport {
    bool squares_to_zero = false;
    bool quotient_is_product = false;
    bool no_splitting = false;
    mpz_class elements_checked = 0;
    bool ok() const { return squares_to_zero && quotient_is_product && no_splitting; }
};

// Element-exhaustive verification over a finite base ring: the ideal of
// strictly upper matrices squares to zero, T/I multiplies like R x R, and no
// element t satisfies I*t = 0 with 1 - t in I.
IdealCheckReport check_ideal_lemmas(const Ring& ring);

}  // namespace morphcat
