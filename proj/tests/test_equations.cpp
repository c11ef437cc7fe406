#include <doctest.h>

#include <algorithm>
#include <random>

#include "cohere/equations.hpp"
#include "cohere/graph.hpp"
#include "cohere/text.hpp"
#include "cohere/typing.hpp"

using namespace cohere;

namespace {

Instantiation letters() {
  auto L = [](const char* s) { return Formula::letter(s); };
  return {{"A", L("p")},  {"B", L("q")},  {"C", L("r")},  {"D", L("s")}, {"A1", L("p")},
          {"A2", L("q")}, {"A3", L("r")}, {"B1", L("s")}, {"B2", L("p")}};
}

Formula random_formula(std::mt19937& rng, int depth, bool unit, bool functors) {
  switch (rng() % (depth > 0 ? 5 : 2)) {
    case 0: return Formula::letter(std::string(1, "pqr"[rng() % 3]));
    case 1: return unit ? Formula::unit() : Formula::letter("s");
    case 2:
    case 3:
      return random_formula(rng, depth - 1, unit, functors) *
             random_formula(rng, depth - 1, unit, functors);
    default:
      return functors ? E(1 + rng() % 2, random_formula(rng, depth - 1, unit, functors))
                      : Formula::letter("q");
  }
}

bool has_tag(const Theory& th, const std::string& tag) {
  const auto& eqs = equations_for(th);
  return std::any_of(eqs.begin(), eqs.end(), [&](const auto& e) { return e.tag == tag; });
}

}  // namespace

TEST_CASE("every equation holds in the graph semantics") {
  for (const Theory& th : all_theories()) {
    for (const EquationScheme& eq : equations_for(th)) {
      CAPTURE(th.name);
      CAPTURE(eq.tag);
      auto [l, r] = instantiate(eq, letters());
      TypePair tl = source_target(l, th), tr = source_target(r, th);
      CHECK(tl == tr);
      CHECK(graph_of(l, th) == graph_of(r, th));
    }
  }
}

TEST_CASE("instantiations at random formulae keep both sides equal") {
  std::mt19937 rng(101);
  for (const Theory& th : all_theories()) {
    for (const EquationScheme& eq : equations_for(th)) {
      for (int k = 0; k < 8; ++k) {
        Instantiation args;
        for (const std::string& v : eq.metavariables)
          args[v] = random_formula(rng, 2, th.unit_allowed, th.functors_allowed);
        unsigned functor = 1 + rng() % 3;
        auto [l, r] = instantiate(eq, args, eq.uses_functor ? functor : 1);
        CAPTURE(th.name);
        CAPTURE(eq.tag);
        CAPTURE(to_string(l));
        REQUIRE(source_target(l, th) == source_target(r, th));
        CHECK(graph_of(l, th) == graph_of(r, th));
      }
    }
  }
}

TEST_CASE("table membership") {
  const Theory& m = theory(TheoryTag::M);
  CHECK(has_tag(m, "(ψa)"));
  CHECK(has_tag(m, "(ψl)"));
  CHECK(has_tag(m, "(pentagon)"));
  CHECK_FALSE(has_tag(m, "(ψc)"));
  CHECK(has_tag(theory(TheoryTag::Mc), "(ψc)"));
  CHECK(has_tag(theory(TheoryTag::Mc), "(ΨΨ1)"));
  CHECK(has_tag(theory(TheoryTag::Lc), "(ΨᴿΨc4)") == false);
  for (const char* tag : {"(ΨᴸΨᴸ)", "(ΨᴸΨᴿ1)", "(ΨᴸΨᴿ2)", "(Ψᴸc1)", "(Ψᴿc4)", "(ψᴸψᴿc)"})
    CHECK(has_tag(theory(TheoryTag::Lc), tag));
  CHECK(has_tag(theory(TheoryTag::R), "(Δac)"));
  CHECK(has_tag(theory(TheoryTag::R), "(ψΔ)"));
  CHECK_FALSE(has_tag(theory(TheoryTag::Rminus), "(Δl)"));
  CHECK(has_tag(theory(TheoryTag::C), "(ext)"));
  for (const Theory& th : all_theories()) CHECK_FALSE(has_tag(th, "(ψ¡)"));
  CHECK(has_tag(theory(TheoryTag::D), "(ψ∇)"));
  CHECK(has_tag(theory(TheoryTag::D), "(ψ!)"));
  CHECK(has_tag(theory(TheoryTag::D), "(ψa)"));
  CHECK_FALSE(has_tag(theory(TheoryTag::Mminus), "(ψl)"));
}
