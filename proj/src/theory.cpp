#include "cohere/theory.hpp"

#include <array>
#include <initializer_list>

namespace cohere {

namespace {

using K = TermKind;

std::bitset<kTermKindCount> heads(std::initializer_list<TermKind> kinds) {
  std::bitset<kTermKindCount> set;
  for (TermKind k : kinds) set.set(static_cast<std::size_t>(k));
  return set;
}

const auto kMonoidal = heads({K::Assoc, K::AssocInv, K::LUnit, K::LUnitInv, K::RUnit, K::RUnitInv});
const auto kAssocOnly = heads({K::Assoc, K::AssocInv});
const auto kPsi = heads({K::Psi, K::Psi0});
const auto kSym = heads({K::Sym});

const std::array<Theory, 12>& table() {
  static const std::array<Theory, 12> theories{{
      {TheoryTag::E, "E", kMonoidal, CountingMode::FunctorsOnly, GraphKind::Identity,
       DecisionMode::Preorder, true, true},
      {TheoryTag::M, "M", kMonoidal | kPsi, CountingMode::FunctorsOnly, GraphKind::Function,
       DecisionMode::GraphFaithful, true, true},
      {TheoryTag::Mminus, "Mminus", kAssocOnly | heads({K::Psi}), CountingMode::FunctorsOnly,
       GraphKind::Function, DecisionMode::Preorder, false, true},
      {TheoryTag::LL, "LL", kMonoidal | heads({K::PsiL}), CountingMode::FunctorsOnly,
       GraphKind::Identity, DecisionMode::Preorder, true, true},
      {TheoryTag::LR, "LR", kMonoidal | heads({K::PsiR}), CountingMode::FunctorsOnly,
       GraphKind::Bijection, DecisionMode::Preorder, true, true},
      {TheoryTag::L, "L", kMonoidal | heads({K::PsiL, K::PsiR}), CountingMode::FunctorsOnly,
       GraphKind::Bijection, DecisionMode::GraphFaithful, true, true},
      {TheoryTag::Mc, "Mc", kMonoidal | kPsi | kSym, CountingMode::AllGenerators,
       GraphKind::Function, DecisionMode::GraphFaithful, true, true},
      {TheoryTag::Lc, "Lc", kMonoidal | heads({K::PsiL, K::PsiR}) | kSym,
       CountingMode::AllGenerators, GraphKind::Bijection, DecisionMode::GraphFaithful, true, true},
      {TheoryTag::R, "R", kMonoidal | kPsi | kSym | heads({K::Diag}), CountingMode::AllGenerators,
       GraphKind::Relation, DecisionMode::GraphFaithful, true, true},
      {TheoryTag::Rminus, "Rminus", kAssocOnly | kSym | heads({K::Diag}),
       CountingMode::AllGenerators, GraphKind::Relation, DecisionMode::GraphFaithful, false,
       false},
      {TheoryTag::C, "C", kMonoidal | kPsi | kSym | heads({K::Diag, K::ToTerminal}),
       CountingMode::AllGenerators, GraphKind::Relation, DecisionMode::GraphFaithful, true, true},
      {TheoryTag::D, "D", kMonoidal | kSym | heads({K::Codiag, K::FromInitial}),
       CountingMode::AllGenerators, GraphKind::Function, DecisionMode::GraphFaithful, true, true},
  }};
  return theories;
}

}  // namespace

const Theory& theory(TheoryTag tag) { return table()[static_cast<std::size_t>(tag)]; }

std::span<const Theory> all_theories() { return table(); }

std::optional<TheoryTag> parse_theory_tag(std::string_view text) {
  for (const Theory& th : table())
    if (th.name == text) return th.tag;
  return std::nullopt;
}

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Identity: return "identity";
    case GraphKind::Bijection: return "bijection";
    case GraphKind::Function: return "function";
    case GraphKind::Relation: return "relation";
  }
  return "relation";
}

}  // namespace cohere
