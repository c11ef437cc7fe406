#pragma once

#include <optional>
#include <string>
#include <utility>

#include "cohere/graph.hpp"
#include "cohere/term.hpp"
#include "cohere/theory.hpp"

namespace cohere {

struct Verdict {
  enum class Kind { Equal, NotEqual, TypeMismatch };
  enum class Reason { ByPreorder, ByGraph };

  Kind kind = Kind::Equal;
  Reason reason = Reason::ByPreorder;                 // Equal
  std::optional<std::pair<Graph, Graph>> witness;     // NotEqual
  bool source_differs = false;                        // TypeMismatch
  bool target_differs = false;

  bool equal() const { return kind == Kind::Equal; }
};

/// Throws the typing errors of source_target when f or g is not a term of th.
Verdict decide_equal(const ArrowTerm& f, const ArrowTerm& g, const Theory& th);

std::string to_text(const Verdict& v);
std::string to_json(const Verdict& v);

std::optional<ArrowTerm> inhabited_E(Formula a, Formula b);

/// Throws UnitPresent when I occurs in either formula.
std::optional<ArrowTerm> inhabited_Mminus(Formula a, Formula b);

/// a diversified on letters, b diversified; throws PreconditionViolated
/// otherwise.
std::optional<ArrowTerm> theoremhood_Mc(Formula a, Formula b);

/// The criterion alone, without building a witness.
bool theoremhood_criterion(Formula a, Formula b);

}  // namespace cohere
