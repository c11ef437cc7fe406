#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace cohere {

namespace detail {
struct FormulaNode;
}

enum class FormulaKind : std::uint8_t { Letter, Unit, Tensor, App };

/// Objects of the free categories: letters, the unit I, binary tensor and
/// applications of generating functors E^i.
///
/// Formulae are hash-consed. Two structurally equal formulae share one node,
/// so equality and hashing are pointer operations. Nodes are never freed.
class Formula {
 public:
  Formula();  // the unit I

  static Formula letter(std::string_view name);
  static Formula unit();
  static Formula tensor(Formula left, Formula right);
  static Formula app(unsigned functor, Formula body);

  FormulaKind kind() const;
  bool is_letter() const { return kind() == FormulaKind::Letter; }
  bool is_unit() const { return kind() == FormulaKind::Unit; }
  bool is_tensor() const { return kind() == FormulaKind::Tensor; }
  bool is_app() const { return kind() == FormulaKind::App; }

  const std::string& name() const;  // Letter only
  unsigned functor() const;         // App only
  Formula left() const;             // Tensor only
  Formula right() const;            // Tensor only
  Formula body() const;             // App only

  /// Number of App nodes.
  std::size_t functor_count() const;
  /// Number of Letter nodes.
  std::size_t letter_count() const;
  /// Number of Unit nodes.
  std::size_t unit_count() const;
  /// Letters plus units: the leaves of the written formula.
  std::size_t leaf_count() const { return letter_count() + unit_count(); }

  std::size_t hash() const;
  std::uint64_t id() const;

  friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }

  /// Structural total order, independent of construction history.
  friend std::strong_ordering operator<=>(Formula a, Formula b);

 private:
  explicit Formula(const detail::FormulaNode* node) : node_(node) {}
  const detail::FormulaNode* node_;
};

inline Formula operator*(Formula a, Formula b) { return Formula::tensor(a, b); }
inline Formula E(unsigned i, Formula body) { return Formula::app(i, body); }

/// A position inside a formula: a sequence of steps from the root.
enum class Step : std::uint8_t { Left = 0, Right = 1, Body = 2 };
using Path = std::vector<Step>;

bool is_prefix(const Path& prefix, const Path& path);
std::string to_string(const Path& path);

/// Subformula at `path`; throws Error(BadOccurrence) when the path does not
/// exist.
Formula subformula_at(Formula f, const Path& path);
/// Replaces the subformula at `path`.
Formula replace_at(Formula f, const Path& path, Formula replacement);

/// Substitutes formulae for letters.
Formula substitute(Formula f, const std::function<bool(const std::string&, Formula&)>& lookup);

}  // namespace cohere

template <>
struct std::hash<cohere::Formula> {
  std::size_t operator()(cohere::Formula f) const noexcept { return f.hash(); }
};
