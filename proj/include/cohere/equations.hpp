#pragma once

#include <map>
#include <string>
#include <vector>

#include "cohere/formula.hpp"
#include "cohere/term.hpp"
#include "cohere/theory.hpp"

namespace cohere {

/// An object-indexed family of equations. Both sides are templates whose
/// metavariables are the letters named in `metavariables`; every E in a
/// template is E^1 and is renamed on instantiation.
struct EquationScheme {
  std::string tag;
  std::vector<std::string> metavariables;
  ArrowTerm lhs;
  ArrowTerm rhs;
  bool uses_functor = false;
};

using Instantiation = std::map<std::string, Formula>;

/// Letters of the template stand for formulae. Unbound metavariables stay as
/// letters.
std::pair<ArrowTerm, ArrowTerm> instantiate(const EquationScheme& eq, const Instantiation& args,
                                            unsigned functor = 1);

ArrowTerm rename_functor(const ArrowTerm& t, unsigned from, unsigned to);
Formula rename_functor(Formula f, unsigned from, unsigned to);

/// The full table for a theory: Mac Lane axioms, isomorphism equations and
/// the theory's own preservation and coherence equations. Category,
/// bifunctor, functor and naturality laws are not listed here; the oracle
/// applies them structurally.
const std::vector<EquationScheme>& equations_for(const Theory& th);

/// Every distinct tag across all theories, for reporting.
std::vector<std::string> all_equation_tags();

}  // namespace cohere
