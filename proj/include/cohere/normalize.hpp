#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohere/graph.hpp"
#include "cohere/strict.hpp"

namespace cohere {

enum class FactorKind { Psi, Psi0, Sym, BigPsi, Other };

/// Siblings of the path to a factor's head at one nesting level.
struct Level {
  StrictFormula left;
  StrictFormula right;
  friend bool operator==(const Level&, const Level&) = default;
};

/// One head in context: levels[0] is the outermost level and functors[k]
/// is the E between levels[k] and levels[k+1].
struct Factor {
  std::vector<Level> levels{Level{}};
  std::vector<unsigned> functors;
  FactorKind kind = FactorKind::Other;
  Head head;           // strict indices
  StrictFormula gap;   // B of Ψ_{A1,A2;B}

  StrictTerm term() const;
  StrictTerm head_term() const;
  StrictFormula source() const { return term().source(); }
  StrictFormula target() const { return term().target(); }

  void wrap_left(const StrictFormula& x);
  void wrap_right(const StrictFormula& x);
  void wrap_under(unsigned i);

  friend bool operator==(const Factor& a, const Factor& b) {
    return a.levels == b.levels && a.functors == b.functors && a.kind == b.kind &&
           a.head == b.head && a.gap == b.gap;
  }
};

std::string to_string(const Factor& f);

/// f_1 first.
struct Developed {
  StrictFormula source;
  StrictFormula target;
  std::vector<Factor> factors;
};

Developed develop(const StrictTerm& t);
StrictTerm compose(const Developed& d);

/// Number of E occurrences to the left of a ψ or Ψ head. Throws NotPsiFactor.
std::size_t kappa(const Factor& f);
/// Image of kappa(f_j) under the graph of f_m ∘ … ∘ f_{j+1}.
std::size_t tau(const Developed& d, std::size_t j);

/// (ψ⊗1_B)∘(1_{EA1}⊗c_{B,EA2}); ψ itself when B is empty.
StrictTerm big_psi(unsigned i, const StrictFormula& a1, const StrictFormula& a2,
                   const StrictFormula& b);

struct Block {
  std::vector<Factor> factors;
  std::size_t tau = 0;
  friend bool operator==(const Block&, const Block&) = default;
};

struct NormalFormM {
  StrictFormula source;
  StrictFormula target;
  StrictTerm h = StrictTerm::id(StrictFormula());
  std::vector<Block> blocks;
  std::vector<std::string> steps;  // equation tags the input needed

  friend bool operator==(const NormalFormM& a, const NormalFormM& b) {
    return a.source == b.source && a.target == b.target && a.h == b.h && a.blocks == b.blocks;
  }
};

struct NormalFormMc {
  StrictFormula source;
  StrictFormula target;
  StrictTerm h = StrictTerm::id(StrictFormula());
  std::vector<Factor> g;  // atomized c-factors
  std::vector<Block> blocks;
  std::vector<std::string> steps;

  friend bool operator==(const NormalFormMc& a, const NormalFormMc& b) {
    return a.source == b.source && a.target == b.target && a.h == b.h && a.g == b.g &&
           a.blocks == b.blocks;
  }
};

/// Throws PreconditionViolated when t uses heads outside the strict theory.
NormalFormM normalize_M(const StrictTerm& t);
NormalFormMc normalize_Mc(const StrictTerm& t);

/// The normal form whose graph sends the k-th generator of `source` (all
/// generators, preorder) to generator labels[k] of `target`. Without
/// `symmetric` no c-factors are used. Nothing when no such arrow exists.
std::optional<NormalFormMc> realize(const StrictFormula& source, const StrictFormula& target,
                                    const std::vector<std::size_t>& labels, bool symmetric);

StrictTerm readback(const NormalFormM& nf);
StrictTerm readback(const NormalFormMc& nf);

std::string to_text(const NormalFormM& nf);
std::string to_text(const NormalFormMc& nf);
std::string to_json(const NormalFormM& nf);
std::string to_json(const NormalFormMc& nf);

}  // namespace cohere
