#include <doctest.h>

#include <algorithm>
#include <random>

#include "cohere/equations.hpp"
#include "cohere/error.hpp"
#include "cohere/oracle.hpp"
#include "cohere/text.hpp"
#include "cohere/typing.hpp"
#include "random_terms.hpp"

using namespace cohere;

namespace {

StrictTerm S(const char* s) { return strictify_term(parse_term(s)); }
StrictFormula SF(const char* s) { return strictify_formula(parse_formula(s)); }

StrictTerm random_term(std::mt19937& rng, bool sym) {
  StrictFormula s = testing::random_object(rng, 2, 3);
  return testing::random_strict_term(rng, s, 1 + rng() % 5, sym);
}

bool contains(const std::vector<DevTerm>& v, const DevTerm& t) {
  return std::find(v.begin(), v.end(), t) != v.end();
}

}  // namespace

TEST_CASE("moves round trip through strict terms") {
  std::mt19937 rng(7);
  for (int k = 0; k < 300; ++k) {
    bool sym = k % 2 == 1;
    StrictTerm t = random_term(rng, sym);
    DevTerm d = to_dev(t);
    StrictTerm back = to_strict(d);
    CHECK(back.source() == t.source());
    CHECK(back.target() == t.target());
    CHECK(target_of(d) == t.target());
    CountingMode mode = CountingMode::AllGenerators;
    CHECK(graph_of(back, mode) == graph_of(t, mode));
    CHECK(canonical(d) == d);
    CHECK(to_dev(back) == d);
  }
}

TEST_CASE("exchange agrees with the dependency order") {
  std::mt19937 rng(11);
  std::size_t exchanged = 0, blocked = 0;
  for (int k = 0; k < 400; ++k) {
    StrictTerm t = random_term(rng, k % 2 == 1);
    DevTerm d = to_dev(t);
    auto reach = dependency_order(d.source, d.steps);
    StrictFormula x = d.source;
    for (std::size_t i = 0; i + 1 < d.steps.size(); ++i) {
      const Move &m1 = d.steps[i], &m2 = d.steps[i + 1];
      auto r = exchange(m1, m2);
      CHECK(r.has_value() == !reach[i][i + 1]);
      if (r) {
        ++exchanged;
        auto y = apply_step(x, r->first);
        REQUIRE(y.has_value());
        auto z = apply_step(*y, r->second);
        REQUIRE(z.has_value());
        CHECK(*z == *apply_step(*apply_step(x, m1), m2));
        auto back = exchange(r->first, r->second);
        REQUIRE(back.has_value());
        CHECK(back->first == m1);
        CHECK(back->second == m2);
      } else {
        ++blocked;
      }
      x = *apply_step(x, m1);
    }
  }
  CHECK(exchanged > 50);
  CHECK(blocked > 50);
}

TEST_CASE("canonical form ignores the order of independent moves") {
  DevTerm a = to_dev(S("(psi1{p,q} * id{E2 I}) . (id{(E1 p * E1 q)} * psi02)"));
  DevTerm b = to_dev(S("(id{E1 (p * q)} * psi02) . psi1{p,q}"));
  CHECK(a.steps.size() == 2);
  CHECK(a == b);
}

TEST_CASE("enumeration holds both unit counterexamples") {
  const Theory& m = theory(TheoryTag::M);
  StrictFormula ei = SF("E1 I"), two = SF("(E1 I * E1 I)");
  auto all = enumerate_strict(ei, two, 4, m);
  DevTerm f = to_dev(S("(psi01 * id{E1 I}) . l'{E1 I}"));
  DevTerm g = to_dev(S("(id{E1 I} * psi01) . r'{E1 I}"));
  CHECK(f != g);
  CHECK(contains(all, f));
  CHECK(contains(all, g));
  for (const auto& t : all) CHECK(target_of(t) == two);
  auto arrows = enumerate_arrows(parse_formula("E1 I"), parse_formula("(E1 I * E1 I)"), 2, m);
  CHECK(!arrows.empty());
  for (const auto& t : arrows) {
    TypePair tp = source_target(t, m);
    CHECK(tp.source == parse_formula("E1 I"));
    CHECK(tp.target == parse_formula("(E1 I * E1 I)"));
  }
}

TEST_CASE("closure proves scheme instances and replays them") {
  const Theory& m = theory(TheoryTag::M);
  ArrowTerm lhs = parse_term("E1[l{p}] . psi1{I,p} . (psi01 * id{E1 p})");
  ArrowTerm rhs = parse_term("l{E1 p}");
  ClosureResult r = closure_equal(lhs, rhs, m, 1000);
  REQUIRE(r.proved);
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].eq == "(ψl)");
  DevTerm f = to_dev(strictify_term(lhs)), g = to_dev(strictify_term(rhs));
  CHECK(replay(f, r.trace, g, m));
  CHECK(to_json(r.trace).find("(ψl)") != std::string::npos);

  ClosureResult same = closure_equal(lhs, lhs, m, 10);
  CHECK(same.proved);
  CHECK(same.trace.empty());

  ArrowTerm assoc1 = parse_term("psi1{(p * q),r} . (psi1{p,q} * id{E1 r})");
  ArrowTerm assoc2 =
      parse_term("E1[a'{p,q,r}] . psi1{p,(q * r)} . (id{E1 p} * psi1{q,r}) . a{E1 p,E1 q,E1 r}");
  ClosureResult ra = closure_equal(assoc1, assoc2, m, 1000);
  REQUIRE(ra.proved);
  CHECK(replay(to_dev(strictify_term(assoc1)), ra.trace, to_dev(strictify_term(assoc2)), m));
}

TEST_CASE("closure does not identify the unit counterexamples") {
  const Theory& m = theory(TheoryTag::M);
  ArrowTerm f = parse_term("(psi01 * id{E1 I}) . l'{E1 I}");
  ArrowTerm g = parse_term("(id{E1 I} * psi01) . r'{E1 I}");
  ClosureResult r = closure_equal(f, g, m, 2000);
  CHECK(!r.proved);
  CHECK(r.explored < 2000);  // the search space is exhausted, not the budget
  CHECK_THROWS_AS(closure_equal(f, parse_term("id{E1 I}"), m, 10), Error);
}

TEST_CASE("naturality and symmetry in Mc") {
  const Theory& mc = theory(TheoryTag::Mc);
  ArrowTerm f = parse_term("E1[c{p,q}] . psi1{p,q}");
  ArrowTerm g = parse_term("psi1{q,p} . c{E1 p,E1 q}");
  ClosureResult r = closure_equal(f, g, mc, 1000);
  REQUIRE(r.proved);
  CHECK(replay(to_dev(strictify_term(f)), r.trace, to_dev(strictify_term(g)), mc));

  // Needs the mirrored hexagon, which the trace spells out in table equations.
  DevTerm m1 = to_dev(S("c{p,(p * q)}"));
  DevTerm m2 = to_dev(S("c{(q * p),p} . c{(p * p),q}"));
  ClosureResult rm = closure_equal(m1, m2, mc, 100000);
  REQUIRE(rm.proved);
  for (const auto& s : rm.trace) {
    auto tags = all_equation_tags();
    CHECK((s.eq == "(naturality)" || std::find(tags.begin(), tags.end(), s.eq) != tags.end()));
  }
  CHECK(replay(m1, rm.trace, m2, mc));

  ArrowTerm h = parse_term("c{q,p} . c{p,q}");
  ClosureResult cc = closure_equal(h, parse_term("id{(p * q)}"), mc, 100);
  CHECK(cc.proved);
}

TEST_CASE("small reports are sound and complete") {
  for (TheoryTag tag : {TheoryTag::E, TheoryTag::Mminus, TheoryTag::M, TheoryTag::Mc}) {
    CAPTURE(static_cast<int>(tag));
    CoherenceReport rep = coherence_report(theory(tag), 2, 2, 10000, 1);
    CHECK(rep.soundness_violations == 0);
    CHECK(rep.unproved_pairs == 0);
    CHECK(rep.objects > 0);
    CHECK(rep.closure_classes == rep.graph_classes);
  }
  CHECK(!oracle_supports(theory(TheoryTag::R)));
  CHECK_THROWS_AS(coherence_report(theory(TheoryTag::R), 1, 1, 10), Error);
}
