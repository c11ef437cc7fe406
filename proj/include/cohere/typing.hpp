#pragma once

#include <set>
#include <vector>

#include "cohere/error.hpp"
#include "cohere/formula.hpp"
#include "cohere/term.hpp"
#include "cohere/theory.hpp"

namespace cohere {

struct TypePair {
  Formula source;
  Formula target;
  friend bool operator==(const TypePair&, const TypePair&) = default;
};

/// Throws UnitForbidden / HeadNotInTheory when `a` cannot be an object of `th`.
void validate_formula(Formula a, const Theory& th, std::size_t pos = Error::npos);

/// Compositional typing. Every head, index and interface is checked against th.
TypePair source_target(const ArrowTerm& t, const Theory& th);

/// Typing without any theory restriction.
TypePair source_target(const ArrowTerm& t);

std::size_t count_occurrences(Formula a, CountingMode mode);

/// Generator occurrences (letters and applications) in written order, 0-based.
struct Occurrence {
  Path path;
  bool is_functor;
  unsigned functor;   // functor occurrences
  std::string name;   // letter occurrences
};
std::vector<Occurrence> generator_occurrences(Formula a);

/// Occurrence indices inside the body of the functor occurrence `occ`.
std::set<std::size_t> scope_of(Formula b, std::size_t occ);

enum class DiversityMode { Objects, Functors, Both };
bool is_diversified(Formula a, DiversityMode mode);

}  // namespace cohere
