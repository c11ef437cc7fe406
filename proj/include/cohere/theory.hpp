#pragma once

#include <bitset>
#include <optional>
#include <span>
#include <string_view>

#include "cohere/term.hpp"

namespace cohere {

enum class TheoryTag {
  E,       // monoidal category with plain endofunctors
  M,       // monoidal endofunctors
  Mminus,  // M without the unit
  LL,      // left monoidal
  LR,      // right monoidal
  L,       // locally monoidal
  Mc,      // linear (symmetric monoidal) endofunctors
  Lc,      // locally linear
  R,       // conjunctive relevant
  Rminus,  // free conjunctive relevant category, no endofunctors
  C,       // cartesian with relevant endofunctors
  D,       // cocartesian
};

enum class CountingMode { FunctorsOnly, AllGenerators };
enum class GraphKind { Identity = 0, Bijection = 1, Function = 2, Relation = 3 };
enum class DecisionMode { Preorder, GraphFaithful };

struct Theory {
  TheoryTag tag;
  std::string_view name;
  std::bitset<kTermKindCount> allowed_heads;
  CountingMode counting;
  GraphKind graph_kind;
  DecisionMode decision;
  bool unit_allowed;
  bool functors_allowed;

  bool allows(TermKind k) const { return allowed_heads.test(static_cast<std::size_t>(k)); }
};

const Theory& theory(TheoryTag tag);
std::span<const Theory> all_theories();
/// Accepts the CLI tags `E, M, Mminus, LL, LR, L, Mc, Lc, R, Rminus, C, D`.
std::optional<TheoryTag> parse_theory_tag(std::string_view text);

std::string_view to_string(GraphKind kind);

}  // namespace cohere
