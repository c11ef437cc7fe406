#include <doctest.h>

#include <random>

#include "cohere/builders.hpp"
#include "cohere/error.hpp"
#include "cohere/graph.hpp"
#include "cohere/text.hpp"
#include "cohere/typing.hpp"

using namespace cohere;

namespace doctest {
template <>
struct StringMaker<Graph> {
  static String convert(const Graph& g) { return to_text(g).c_str(); }
};
}  // namespace doctest

namespace {

using P = std::vector<Graph::Pair>;
Formula F(const char* s) { return parse_formula(s); }
Graph G(const char* term, TheoryTag t) { return graph_of(parse_term(term), theory(t)); }

}  // namespace

TEST_CASE("head graphs") {
  Graph psi = G("psi1{p,q}", TheoryTag::M);
  CHECK(psi == Graph(2, 1, P{{0, 0}, {1, 0}}));
  CHECK(psi.kind() == GraphKind::Function);

  Graph psi0 = G("psi01", TheoryTag::M);
  CHECK(psi0 == Graph::empty(0, 1));
  CHECK(psi0.kind() == GraphKind::Function);

  CHECK(G("a{p,q,r}", TheoryTag::M) == Graph::identity(0));
  CHECK(G("c{E1 p,E1 q}", TheoryTag::Mc) == Graph(4, 4, P{{0, 2}, {1, 3}, {2, 0}, {3, 1}}));

  Graph delta = G("delta{p}", TheoryTag::R);
  CHECK(delta == Graph(1, 2, P{{0, 0}, {0, 1}}));
  CHECK(delta.kind() == GraphKind::Relation);

  CHECK(G("nabla{p}", TheoryTag::D) == Graph(2, 1, P{{0, 0}, {1, 0}}));
  CHECK(G("cobang{p}", TheoryTag::C) == Graph::empty(1, 0));
  CHECK(G("cobang{p}", TheoryTag::C).kind() == GraphKind::Relation);

  CHECK(G("psiL1{E2 p,q}", TheoryTag::LL) == Graph::identity(2));
  // A's strands move right by one, the outer E goes to 0.
  CHECK(G("psiR1{E2 p,E3 q}", TheoryTag::LR) == Graph::function(3, {1, 0, 2}));
}

TEST_CASE("unit counterexample graphs") {
  CHECK(G("(psi01 * id{E1 I}) . l'{E1 I}", TheoryTag::M) == Graph(1, 2, P{{0, 1}}));
  CHECK(G("(id{E1 I} * psi01) . r'{E1 I}", TheoryTag::M) == Graph(1, 2, P{{0, 0}}));
}

TEST_CASE("compose, tensor, under") {
  Graph contract = Graph(2, 1, P{{0, 0}, {1, 0}});
  CHECK(compose_graphs(Graph::identity(2), contract) == contract);
  CHECK(compose_graphs(Graph(1, 2, P{{0, 0}, {0, 1}}), contract) == Graph(1, 1, P{{0, 0}}));
  CHECK_THROWS_AS(compose_graphs(contract, contract), Error);

  CHECK(tensor_graphs(Graph::identity(1), Graph::identity(1)) == Graph::identity(2));
  Graph t = tensor_graphs(contract, Graph::empty(0, 1));
  CHECK(t == Graph(2, 2, P{{0, 0}, {1, 0}}));

  CHECK(under_functor(Graph::identity(0)) == Graph::identity(1));
  CHECK(under_functor(contract) == Graph(3, 2, P{{0, 0}, {1, 1}, {2, 1}}));
  CHECK(G("E1[psi2{p,q}]", TheoryTag::M) == under_functor(G("psi2{p,q}", TheoryTag::M)));

  Graph lhs = G("psi1{(p * q),r} . (psi1{p,q} * id{E1 r})", TheoryTag::M);
  Graph rhs = G("E1[a'{p,q,r}] . (psi1{p,(q * r)} . (id{E1 p} * psi1{q,r})) . a{E1 p,E1 q,E1 r}",
                TheoryTag::M);
  CHECK(lhs == rhs);
}

TEST_CASE("medial graphs") {
  Graph g = graph_of(medial(F("p"), F("I"), F("I"), F("q")), theory(TheoryTag::Mc));
  CHECK(g == Graph::identity(2));
  Graph full = graph_of(medial(F("p"), F("q"), F("r"), F("s")), theory(TheoryTag::Mc));
  CHECK(full == Graph::function(4, {0, 2, 1, 3}));
  Graph units = graph_of(medial(F("I"), F("I"), F("I"), F("I")), theory(TheoryTag::Mc));
  CHECK(units == Graph::empty(0, 0));
  CHECK(units.kind() == GraphKind::Identity);
}

TEST_CASE("detectors") {
  Graph delta(1, 2, P{{0, 0}, {0, 1}});
  CHECK(detect_short_circuits(delta, Graph(2, 1, P{{0, 0}, {1, 0}})) ==
        std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}});
  CHECK(detect_short_circuits(delta, Graph::identity(2)).empty());
  CHECK(detect_useless_crossings(delta, Graph::function(2, {1, 0})) ==
        std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}});
  CHECK(detect_useless_crossings(Graph::identity(2), Graph::function(2, {1, 0})).empty());
  CHECK_THROWS_AS(detect_short_circuits(delta, Graph::identity(3)), Error);
}

TEST_CASE("json and dot") {
  CHECK(to_json(G("psi01", TheoryTag::M)) ==
        R"({"source":0,"target":1,"pairs":[],"kind":"function"})");
  CHECK(to_json(G("psi1{p,q}", TheoryTag::M)) ==
        R"({"source":2,"target":1,"pairs":[[0,0],[1,0]],"kind":"function"})");
  CHECK(to_dot(Graph::identity(1)).find("s0 -> t0") != std::string::npos);
}
