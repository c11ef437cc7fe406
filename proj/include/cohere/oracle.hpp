#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohere/graph.hpp"
#include "cohere/strict.hpp"
#include "cohere/theory.hpp"

namespace cohere {

enum class MoveKind : std::uint8_t { Psi, Psi0, Sym };

/// One strict head applied inside an object: `path` descends through
/// atoms, `lo` is the first atom of the head's source in that container.
struct Move {
  std::vector<std::uint8_t> path;
  std::uint8_t lo = 0;
  MoveKind kind = MoveKind::Psi;
  std::uint8_t functor = 0;  // Psi0
  std::uint8_t na = 0;       // Sym
  std::uint8_t nb = 0;

  std::size_t in() const { return kind == MoveKind::Psi ? 2 : kind == MoveKind::Psi0 ? 0 : na + nb; }
  std::size_t out() const { return kind == MoveKind::Sym ? na + nb : 1; }

  friend auto operator<=>(const Move&, const Move&) = default;
};

/// A strict arrow as a sequence of steps from `source`, first step first.
/// Terms built by the oracle are canonical: the least sequence, step by
/// step, among those related by interchange of independent steps.
struct DevTerm {
  StrictFormula source;
  std::vector<Move> steps;

  friend bool operator==(const DevTerm& a, const DevTerm& b) {
    return a.source == b.source && a.steps == b.steps;
  }
};

struct DevTermHash {
  std::size_t operator()(const DevTerm& t) const;
};

/// Nothing when the step does not apply.
std::optional<StrictFormula> apply_step(const StrictFormula& s, const Move& step);
StrictFormula target_of(const DevTerm& t);
/// m1 then m2, exchanged to m2' then m1' when they act on disjoint parts.
std::optional<std::pair<Move, Move>> exchange(const Move& m1, const Move& m2);
/// reach[i][j], i < j: move j must stay after move i in every reordering.
std::vector<std::vector<bool>> dependency_order(const StrictFormula& source,
                                                const std::vector<Move>& moves);
DevTerm canonical(DevTerm t);
/// Throws PreconditionViolated for heads other than ψ, ψ₀ and c.
DevTerm to_dev(const StrictTerm& t);
StrictTerm to_strict(const DevTerm& t);
std::string to_string(const DevTerm& t);

/// Theories the oracle runs: E, Mminus, M and Mc, all at the strict level.
bool oracle_supports(const Theory& th);

std::vector<DevTerm> enumerate_strict(const StrictFormula& a, const StrictFormula& b,
                                      std::size_t size_bound, const Theory& th);
/// The strict universe, lifted and framed to a → b.
std::vector<ArrowTerm> enumerate_arrows(Formula a, Formula b, std::size_t size_bound,
                                        const Theory& th);

struct TraceStep {
  std::string eq;
  std::vector<std::uint8_t> position;
  bool left_to_right = true;
  DevTerm result;
};

struct ClosureResult {
  bool proved = false;
  std::vector<TraceStep> trace;
  std::size_t explored = 0;
};

/// One-step rewrites of t under the strict equations of th and naturality.
std::vector<TraceStep> rewrites(const DevTerm& t, const Theory& th);

/// Bidirectional breadth-first search; throws BoundaryMismatch.
ClosureResult closure_equal(const ArrowTerm& f, const ArrowTerm& g, const Theory& th,
                            std::size_t step_bound);
ClosureResult closure_equal(const DevTerm& f, const DevTerm& g, const Theory& th,
                            std::size_t step_bound);
/// Re-derives every step of the trace from its predecessor.
bool replay(const DevTerm& f, const std::vector<TraceStep>& trace, const DevTerm& g,
            const Theory& th);
std::string to_json(const std::vector<TraceStep>& trace);

struct CoherenceReport {
  std::string theory;
  std::size_t object_atom_bound = 0;
  std::size_t functor_bound = 0;
  std::size_t term_size_bound = 0;
  std::size_t step_bound = 0;
  std::size_t objects = 0;
  std::size_t boundaries = 0;
  std::size_t terms = 0;
  std::size_t graph_classes = 0;
  std::size_t closure_classes = 0;
  std::size_t soundness_violations = 0;
  std::size_t unproved_pairs = 0;
  std::size_t searches = 0;
  bool budget_exhausted = false;
  std::vector<std::pair<std::string, std::string>> examples;  // unproved or unsound pairs
  double seconds = 0;
};

/// Objects are strictifications of formulae with at most object_atom_bound
/// leaves from {p, q, I} and at most functor_bound applications of E¹, E².
CoherenceReport coherence_report(const Theory& th, std::size_t object_atom_bound,
                                 std::size_t term_size_bound, std::size_t step_bound,
                                 std::size_t functor_bound = 2);

std::string to_json(const CoherenceReport& r);
std::string to_table(const CoherenceReport& r);

}  // namespace cohere
