#include <doctest.h>

#include <random>

#include "cohere/error.hpp"
#include "cohere/strict.hpp"
#include "cohere/text.hpp"

using namespace cohere;

namespace {

Formula F(const char* s) { return parse_formula(s); }

Formula random_formula(std::mt19937& rng, int depth) {
  switch (rng() % (depth > 0 ? 5 : 2)) {
    case 0: return Formula::letter(std::string(1, "pqr"[rng() % 3]));
    case 1: return Formula::unit();
    case 2:
    case 3: return random_formula(rng, depth - 1) * random_formula(rng, depth - 1);
    default: return E(1 + rng() % 2, random_formula(rng, depth - 1));
  }
}

StrictFormula random_strict(std::mt19937& rng, int depth) {
  std::vector<Formula> atoms;
  int n = rng() % 4;
  for (int k = 0; k < n; ++k) {
    if (depth > 0 && rng() % 2)
      atoms.push_back(E(1 + rng() % 2, random_strict(rng, depth - 1).embedded()));
    else
      atoms.push_back(Formula::letter(std::string(1, "pqr"[rng() % 3])));
  }
  return StrictFormula::from_atoms(atoms);
}

}  // namespace

TEST_CASE("strictify formulae") {
  CHECK(to_string(strictify_formula(F("((I * p) * E1 I)"))) == "[p, E1[]]");
  CHECK(strictify_formula(F("((p * q) * r)")) == strictify_formula(F("(p * (q * r))")));
  CHECK(strictify_formula(F("I")).empty());
  CHECK(embed_formula(strictify_formula(F("((p * q) * r)"))) == F("(p * (q * r))"));
  CHECK(embed_formula(StrictFormula()) == F("I"));
}

TEST_CASE("strict round trips") {
  std::mt19937 rng(17);
  for (int k = 0; k < 100; ++k) {
    StrictFormula s = random_strict(rng, 3);
    CHECK(strictify_formula(embed_formula(s)) == s);
    CHECK(parse_formula(to_string(s)) == s.embedded());
    Formula a = random_formula(rng, 4);
    CHECK(strictify_formula(a) == strictify_formula(embed_formula(strictify_formula(a))));
  }
}

TEST_CASE("strictify terms") {
  CHECK(strictify_term(parse_term("a{p,q,r}")) == StrictTerm::id(strictify_formula(F("[p,q,r]"))));
  StrictTerm psi = strictify_term(parse_term("psi1{p,q}"));
  CHECK(to_string(psi.source()) == "[E1[p], E1[q]]");
  CHECK(to_string(psi.target()) == "[E1[p, q]]");
  StrictTerm cex = strictify_term(parse_term("(psi01 * id{E1 I}) . l'{E1 I}"));
  CHECK(graph_of(cex, CountingMode::FunctorsOnly) == Graph(1, 2, {{0, 1}}));
  CHECK(to_string(cex) == "((psi01 * id{[E1[]]}) . id{[E1[]]})");
}

TEST_CASE("canonical isos") {
  const Theory& e = theory(TheoryTag::E);
  auto check = [&](Formula a, Formula b) {
    ArrowTerm t = canonical_iso(a, b);
    CHECK(source_target(t, e) == TypePair{a, b});
    CHECK(graph_of(t, e) == Graph::identity(a.functor_count()));
  };
  check(F("((p * q) * r)"), F("(p * (q * r))"));
  check(F("(I * E1 p)"), F("E1 (p * I)"));
  check(F("(p * q)"), F("(p * q)"));
  CHECK(canonical_iso(F("(p * q)"), F("(p * q)")) == ArrowTerm::id(F("(p * q)")));
  try {
    canonical_iso(F("(p * q)"), F("(q * p)"));
    FAIL("expected NoArrow");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NoArrow);
  }
  std::mt19937 rng(23);
  int found = 0;
  for (int k = 0; k < 3000 && found < 200; ++k) {
    Formula a = random_formula(rng, 4), b = random_formula(rng, 4);
    bool same = strictify_formula(a) == strictify_formula(b);
    if (!same) {
      CHECK_THROWS_AS(canonical_iso(a, b), Error);
      continue;
    }
    ++found;
    check(a, b);
    check(a, strictify_formula(a).embedded());
  }
  CHECK(found > 20);
}

TEST_CASE("lift strict terms") {
  StrictTerm s = StrictTerm::ten(StrictTerm::psi(1, strictify_formula(F("p")), strictify_formula(F("q"))),
                                 StrictTerm::id(strictify_formula(F("(r * E2 s)"))));
  ArrowTerm t = lift_strict(s);
  TypePair tp = source_target(t, theory(TheoryTag::M));
  CHECK(tp == TypePair{s.source().embedded(), s.target().embedded()});
  CHECK(graph_of(t, theory(TheoryTag::M)) == graph_of(s, CountingMode::FunctorsOnly));
}
