#pragma once

#include <string>
#include <vector>

#include "cohere/formula.hpp"
#include "cohere/graph.hpp"
#include "cohere/term.hpp"
#include "cohere/typing.hpp"

namespace cohere {

/// An object of the strictified categories: a sequence of atoms, each a
/// letter or E^i applied to a strict formula. Stored as its right-bracketed,
/// unit-free embedding, so equality is pointer equality.
class StrictFormula {
 public:
  StrictFormula() : embedded_(Formula::unit()) {}
  static StrictFormula from_atoms(const std::vector<Formula>& atoms);

  /// Atoms in order; App atoms have strict bodies.
  std::vector<Formula> atoms() const;
  bool empty() const { return embedded_.is_unit(); }
  Formula embedded() const { return embedded_; }

  friend StrictFormula operator+(const StrictFormula& a, const StrictFormula& b);
  friend bool operator==(const StrictFormula&, const StrictFormula&) = default;

 private:
  explicit StrictFormula(Formula f) : embedded_(f) {}
  friend StrictFormula strictify_formula(Formula a);
  Formula embedded_;
};

StrictFormula strictify_formula(Formula a);
Formula embed_formula(const StrictFormula& s);
StrictFormula strict_app(unsigned i, const StrictFormula& body);
std::string to_string(const StrictFormula& s);

/// A term of the strict calculus: an ArrowTerm free of a, l, r and their
/// inverses whose indices are embedded strict formulae. Typing concatenates.
class StrictTerm {
 public:
  static StrictTerm id(const StrictFormula& a);
  static StrictTerm sym(const StrictFormula& a, const StrictFormula& b);
  static StrictTerm psi(unsigned i, const StrictFormula& a, const StrictFormula& b);
  static StrictTerm psi0(unsigned i);
  static StrictTerm leaf(const Head& h);  // indices are strictified
  static StrictTerm comp(const StrictTerm& g, const StrictTerm& f);
  static StrictTerm ten(const StrictTerm& f, const StrictTerm& g);
  static StrictTerm under(unsigned i, const StrictTerm& f);

  const ArrowTerm& term() const { return term_; }
  StrictFormula source() const { return source_; }
  StrictFormula target() const { return target_; }

  friend bool operator==(const StrictTerm& a, const StrictTerm& b) { return a.term_ == b.term_; }

 private:
  StrictTerm(ArrowTerm t, StrictFormula s, StrictFormula g)
      : term_(std::move(t)), source_(s), target_(g) {}
  ArrowTerm term_;
  StrictFormula source_;
  StrictFormula target_;
};

std::pair<StrictFormula, StrictFormula> strict_boundary(const Head& h);

/// a, l, r and inverses become identities; other heads keep their shape.
StrictTerm strictify_term(const ArrowTerm& t);

/// Checks that a plain ArrowTerm is a strict term and types it.
StrictTerm as_strict(const ArrowTerm& t);

std::string to_string(const StrictTerm& t);
Graph graph_of(const StrictTerm& t, CountingMode mode);

/// The E-arrow A → B, built from 1, a, l, r, their inverses, ⊗ and E^i.
/// Throws NoArrow when the strictifications differ.
ArrowTerm canonical_iso(Formula a, Formula b);

/// Inverse of a term built only from isomorphism heads (a, l, r, c).
ArrowTerm invert_iso(const ArrowTerm& t);

/// g ∘ f with the canonical iso inserted when target(f) and source(g) agree
/// only up to strictification.
ArrowTerm glue(const ArrowTerm& g, const ArrowTerm& f);
/// Precomposes and postcomposes canonical isos so that t: s → g.
ArrowTerm frame(const ArrowTerm& t, Formula s, Formula g);

/// The non-strict image of a strict term: boundary is the embedding of the
/// strict boundary.
ArrowTerm lift_strict(const StrictTerm& t);

}  // namespace cohere
