#include "cohere/builders.hpp"

namespace cohere {

using T = ArrowTerm;

ArrowTerm medial(Formula a, Formula b, Formula c, Formula d) {
  T inner = T::comp(T::assoc(c, b, d),
                    T::comp(T::ten(T::sym(b, c), T::id(d)), T::assoc_inv(b, c, d)));
  return T::comp(T::assoc_inv(a, c, b * d),
                 T::comp(T::ten(T::id(a), inner), T::assoc(a, b, c * d)));
}

ArrowTerm derived_psi(unsigned i, Formula a, Formula b) {
  T left = T::under(i, T::comp(T::ten(T::id(a), T::from_initial(b)), T::runit_inv(a)));
  T right = T::under(i, T::comp(T::ten(T::from_initial(a), T::id(b)), T::lunit_inv(b)));
  return T::comp(T::codiag(E(i, a * b)), T::ten(left, right));
}

ArrowTerm derived_psi0(unsigned i) { return T::from_initial(E(i, Formula::unit())); }

ArrowTerm expand_for_theory(const ArrowTerm& t, const Theory& th) {
  if (th.tag != TheoryTag::D) return t;
  switch (t.kind()) {
    case TermKind::Comp:
      return T::comp(expand_for_theory(t.outer(), th), expand_for_theory(t.inner(), th));
    case TermKind::Ten:
      return T::ten(expand_for_theory(t.left(), th), expand_for_theory(t.right(), th));
    case TermKind::Under:
      return T::under(t.functor(), expand_for_theory(t.body(), th));
    case TermKind::Psi:
      return derived_psi(t.functor(), t.index(0), t.index(1));
    case TermKind::Psi0:
      return derived_psi0(t.functor());
    default:
      return t;
  }
}

ArrowTerm big_psi_term(unsigned i, Formula a1, Formula a2, Formula b) {
  Formula ea1 = E(i, a1);
  Formula ea2 = E(i, a2);
  // EA1⊗(B⊗EA2) → EA1⊗(EA2⊗B) → (EA1⊗EA2)⊗B → E(A1⊗A2)⊗B
  return T::comp(T::ten(T::psi(i, a1, a2), T::id(b)),
                 T::comp(T::assoc_inv(ea1, ea2, b), T::ten(T::id(ea1), T::sym(b, ea2))));
}

}  // namespace cohere
