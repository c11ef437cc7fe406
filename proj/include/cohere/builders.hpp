#pragma once

#include "cohere/formula.hpp"
#include "cohere/term.hpp"
#include "cohere/theory.hpp"

namespace cohere {

/// (A⊗B)⊗(C⊗D) → (A⊗C)⊗(B⊗D), as a composite of a, a⁻¹ and c.
ArrowTerm medial(Formula a, Formula b, Formula c, Formula d);

/// ψ and ψ₀ expressed through ∇, !, l⁻¹ and r⁻¹.
ArrowTerm derived_psi(unsigned i, Formula a, Formula b);
ArrowTerm derived_psi0(unsigned i);

/// In D, replaces every primitive ψ/ψ₀ leaf by its derived composite.
/// Other theories are returned unchanged.
ArrowTerm expand_for_theory(const ArrowTerm& t, const Theory& th);

/// Ψ_{A1,A2;B} = (ψ⊗1_B)∘(1⊗c_{B,EA2}) on EA1⊗(B⊗EA2) → E(A1⊗A2)⊗B,
/// with the associators needed to make the bracketing concrete.
ArrowTerm big_psi_term(unsigned i, Formula a1, Formula a2, Formula b);

}  // namespace cohere
