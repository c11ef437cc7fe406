#include <doctest.h>

#include <algorithm>

#include "cohere/equations.hpp"
#include "cohere/error.hpp"
#include "cohere/normalize.hpp"
#include "cohere/text.hpp"
#include "random_terms.hpp"

using namespace cohere;

namespace {

StrictTerm S(const char* s) { return strictify_term(parse_term(s)); }
StrictFormula SF(const char* s) { return strictify_formula(parse_formula(s)); }

void check_m_shape(const NormalFormM& nf) {
  for (std::size_t k = 1; k < nf.blocks.size(); ++k)
    CHECK(nf.blocks[k - 1].tau < nf.blocks[k].tau);
  for (const auto& b : nf.blocks)
    for (const auto& f : b.factors) CHECK(f.kind == FactorKind::Psi);
  for (const auto& f : develop(nf.h).factors) CHECK(f.kind == FactorKind::Psi0);
}

}  // namespace

TEST_CASE("develop, kappa and tau on the worked composite") {
  StrictTerm g1 = S("E1[id{E2 p} * E2[psi1{p,q}]]");
  StrictTerm g2 = S("E1[psi2{p,E1 (p * q)}]");
  Developed d = develop(StrictTerm::comp(g2, g1));
  REQUIRE(d.factors.size() == 2);
  CHECK(kappa(d.factors[0]) == 3);
  CHECK(kappa(d.factors[1]) == 1);
  CHECK(tau(d, 0) == 2);
  CHECK(tau(d, 1) == 1);
  CHECK(compose(d).source() == g1.source());
  CHECK(compose(d).target() == g2.target());
}

TEST_CASE("kappa rejects non-psi factors") {
  Developed d = develop(S("c{p,q}"));
  REQUIRE(d.factors.size() == 1);
  CHECK_THROWS_AS(kappa(d.factors[0]), Error);
  try {
    kappa(d.factors[0]);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPsiFactor);
  }
}

TEST_CASE("big psi") {
  CHECK(big_psi(1, SF("p"), SF("q"), StrictFormula()) == StrictTerm::psi(1, SF("p"), SF("q")));
  // Generators of [E1[], r, E1[q]] are E, r, E, q.
  CHECK(graph_of(big_psi(1, StrictFormula(), SF("q"), SF("r")), CountingMode::AllGenerators) ==
        Graph(4, 3, {{0, 0}, {1, 2}, {2, 0}, {3, 1}}));
  // With A1 = p: E, p, r, E, q onto E, p, q, r.
  CHECK(graph_of(big_psi(1, SF("p"), SF("q"), SF("r")), CountingMode::AllGenerators) ==
        Graph(5, 4, {{0, 0}, {1, 1}, {2, 3}, {3, 0}, {4, 2}}));
}

TEST_CASE("both sides of (psi a) share one normal form") {
  StrictTerm lhs = S("psi1{(p * q),r} . (psi1{p,q} * id{E1 r})");
  StrictTerm rhs = S("psi1{p,(q * r)} . (id{E1 p} * psi1{q,r})");
  NormalFormM a = normalize_M(lhs), b = normalize_M(rhs);
  CHECK(a == b);
  REQUIRE(a.blocks.size() == 1);
  CHECK(a.blocks[0].factors.size() == 2);
  CHECK(b.steps == std::vector<std::string>{"(ψa)"});
}

TEST_CASE("created functors cancel against merges") {
  NormalFormM nf = normalize_M(S("psi1{I,p} . (psi01 * id{E1 p})"));
  CHECK(nf.blocks.empty());
  CHECK(readback(nf) == StrictTerm::id(SF("E1 p")));
  CHECK(nf.steps == std::vector<std::string>{"(ψl)"});

  NormalFormM kept = normalize_M(S("E1[psi02] . psi01"));
  CHECK(kept.blocks.empty());
  CHECK(to_string(kept.target) == "[E1[E2[]]]");
}

TEST_CASE("normalize rejects heads outside the strict theory") {
  CHECK_THROWS_AS(normalize_M(S("c{E1 p,E1 q}")), Error);
  CHECK_THROWS_AS(normalize_Mc(S("delta{p}")), Error);
}

TEST_CASE("random M terms: readback, block order and idempotence") {
  std::mt19937 rng(7);
  std::vector<std::string> tags;
  for (const auto& e : equations_for(theory(TheoryTag::M))) tags.push_back(e.tag);
  tags.push_back("(naturality)");
  for (int n = 0; n < 400; ++n) {
    StrictFormula s = testing::random_object(rng, 2);
    StrictTerm t = testing::random_strict_term(rng, s, 1 + rng() % 6, false);
    NormalFormM nf = normalize_M(t);
    StrictTerm back = readback(nf);
    CHECK(back.source() == t.source());
    CHECK(back.target() == t.target());
    CHECK(graph_of(back, CountingMode::AllGenerators) == graph_of(t, CountingMode::AllGenerators));
    check_m_shape(nf);
    CHECK(normalize_M(back) == nf);
    for (const auto& s : nf.steps) CHECK(std::find(tags.begin(), tags.end(), s) != tags.end());
  }
}

TEST_CASE("random Mc terms: readback, g atomized and idempotence") {
  std::mt19937 rng(11);
  std::vector<std::string> tags;
  for (const auto& e : equations_for(theory(TheoryTag::Mc))) tags.push_back(e.tag);
  tags.push_back("(naturality)");
  for (int n = 0; n < 400; ++n) {
    StrictFormula s = testing::random_object(rng, 2);
    StrictTerm t = testing::random_strict_term(rng, s, 1 + rng() % 6, true);
    NormalFormMc nf = normalize_Mc(t);
    StrictTerm back = readback(nf);
    CHECK(back.source() == t.source());
    CHECK(back.target() == t.target());
    CHECK(graph_of(back, CountingMode::AllGenerators) == graph_of(t, CountingMode::AllGenerators));
    for (std::size_t k = 1; k < nf.blocks.size(); ++k)
      CHECK(nf.blocks[k - 1].tau < nf.blocks[k].tau);
    for (const auto& f : nf.g) {
      CHECK(f.kind == FactorKind::Sym);
      CHECK(strictify_formula(f.head.args[0]).atoms().size() == 1);
      CHECK(strictify_formula(f.head.args[1]).atoms().size() == 1);
    }
    CHECK(normalize_Mc(back) == nf);
    for (const auto& s : nf.steps) CHECK(std::find(tags.begin(), tags.end(), s) != tags.end());
  }
}

TEST_CASE("normal form printing") {
  NormalFormMc nf = normalize_Mc(S("c{E1 p,E1 q}"));
  CHECK(nf.blocks.empty());
  CHECK(nf.g.size() == 1);
  CHECK(to_text(nf).find("g: c{[E1[p]],[E1[q]]}") != std::string::npos);
  CHECK(to_json(nf).find("\"steps\"") != std::string::npos);
}
