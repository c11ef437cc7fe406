#pragma once

#include <array>
#include <functional>
#include <string>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <utility>

#include "cohere/formula.hpp"

namespace cohere {

enum class TermKind : std::uint8_t {
  Id,
  Assoc,
  AssocInv,
  LUnit,
  LUnitInv,
  RUnit,
  RUnitInv,
  Sym,
  Psi,
  Psi0,
  PsiL,
  PsiR,
  Diag,
  Codiag,
  ToTerminal,
  FromInitial,
  Comp,
  Ten,
  Under,
};

inline constexpr std::size_t kTermKindCount = static_cast<std::size_t>(TermKind::Under) + 1;

/// Primitive heads are every kind except identities and the three operations.
constexpr bool is_head(TermKind k) {
  return k != TermKind::Id && k != TermKind::Comp && k != TermKind::Ten && k != TermKind::Under;
}

/// Number of formula indices a leaf carries (Id counts as a leaf).
std::size_t leaf_arity(TermKind k);
/// Whether the leaf carries a functor index (ψ-family).
bool has_functor_index(TermKind k);
std::string_view kind_name(TermKind k);

/// A primitive head with its indices, detached from any term tree.
struct Head {
  TermKind kind = TermKind::Assoc;
  unsigned functor = 0;
  std::array<Formula, 3> args{};

  std::span<const Formula> indices() const { return {args.data(), leaf_arity(kind)}; }

  friend bool operator==(const Head&, const Head&) = default;
  friend std::strong_ordering operator<=>(const Head& a, const Head& b);
  std::size_t hash() const;
};

/// Source and target of a primitive head (or of Id).
std::pair<Formula, Formula> head_boundary(const Head& h);

namespace detail {
struct TermNode;
}

/// Syntactic arrow term. Immutable, shared structure.
class ArrowTerm {
 public:
  static ArrowTerm id(Formula a);
  static ArrowTerm assoc(Formula a, Formula b, Formula c);
  static ArrowTerm assoc_inv(Formula a, Formula b, Formula c);
  static ArrowTerm lunit(Formula a);
  static ArrowTerm lunit_inv(Formula a);
  static ArrowTerm runit(Formula a);
  static ArrowTerm runit_inv(Formula a);
  static ArrowTerm sym(Formula a, Formula b);
  static ArrowTerm psi(unsigned i, Formula a, Formula b);
  static ArrowTerm psi0(unsigned i);
  static ArrowTerm psi_l(unsigned i, Formula a, Formula b);
  static ArrowTerm psi_r(unsigned i, Formula a, Formula b);
  static ArrowTerm diag(Formula a);
  static ArrowTerm codiag(Formula a);
  static ArrowTerm to_terminal(Formula a);
  static ArrowTerm from_initial(Formula a);
  /// g ∘ f: f first.
  static ArrowTerm comp(ArrowTerm g, ArrowTerm f);
  static ArrowTerm ten(ArrowTerm f, ArrowTerm g);
  static ArrowTerm under(unsigned i, ArrowTerm f);

  static ArrowTerm leaf(const Head& h);

  TermKind kind() const;
  unsigned functor() const;
  std::span<const Formula> indices() const;
  Formula index(std::size_t k) const { return indices()[k]; }
  Head head() const;  // leaf kinds only (including Id)

  /// Comp: outer() ∘ inner(); Ten: left() ⊗ right(); Under: body().
  const ArrowTerm& outer() const;
  const ArrowTerm& inner() const;
  const ArrowTerm& left() const;
  const ArrowTerm& right() const;
  const ArrowTerm& body() const;

  /// Byte offset in the source text, when parsed.
  std::size_t source_pos() const;
  ArrowTerm with_source_pos(std::size_t pos) const;

  /// Count of primitive-head occurrences; identities are free.
  std::size_t head_count() const;

  friend bool operator==(const ArrowTerm& a, const ArrowTerm& b);
  std::size_t hash() const;

 private:
  friend struct detail::TermNode;
  ArrowTerm() = default;
  explicit ArrowTerm(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// Replaces letters of the formula indices throughout a term.
ArrowTerm substitute(const ArrowTerm& t,
                     const std::function<bool(const std::string&, Formula&)>& lookup);

}  // namespace cohere

template <>
struct std::hash<cohere::ArrowTerm> {
  std::size_t operator()(const cohere::ArrowTerm& t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<cohere::Head> {
  std::size_t operator()(const cohere::Head& h) const noexcept { return h.hash(); }
};
