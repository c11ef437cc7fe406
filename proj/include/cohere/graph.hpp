#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cohere/term.hpp"
#include "cohere/theory.hpp"

namespace cohere {

/// A finite relation between ordinals m and n, stored source to target with
/// pairs sorted and unique. The kind tag is computed from the pairs.
class Graph {
 public:
  using Pair = std::pair<std::uint32_t, std::uint32_t>;

  Graph() = default;
  Graph(std::size_t source, std::size_t target, std::vector<Pair> pairs);

  static Graph identity(std::size_t n);
  static Graph empty(std::size_t source, std::size_t target);
  /// Total function given by its values.
  static Graph function(std::size_t target, const std::vector<std::uint32_t>& values);

  std::size_t source() const { return source_; }
  std::size_t target() const { return target_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  GraphKind kind() const { return kind_; }

  /// Images of i, ascending.
  std::vector<std::uint32_t> image(std::uint32_t i) const;
  /// Value at i; only for total functions.
  std::uint32_t at(std::uint32_t i) const;
  Graph converse() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.pairs_ == b.pairs_;
  }
  std::size_t hash() const;

 private:
  std::size_t source_ = 0;
  std::size_t target_ = 0;
  std::vector<Pair> pairs_;
  GraphKind kind_ = GraphKind::Identity;
};

/// f first, then g. Throws SizeMismatch.
Graph compose_graphs(const Graph& f, const Graph& g);
Graph tensor_graphs(const Graph& f, const Graph& g);
Graph under_functor(const Graph& f);

Graph head_graph(const Head& h, CountingMode mode);
/// Throws the typing errors of source_target.
Graph graph_of(const ArrowTerm& t, const Theory& th);
/// No typing; the caller guarantees t is well typed.
Graph graph_of_unchecked(const ArrowTerm& t, CountingMode mode);

/// Pairs i<j of f's source with a common origin in h that f sends to a
/// common target.
std::vector<std::pair<std::uint32_t, std::uint32_t>> detect_short_circuits(const Graph& h,
                                                                           const Graph& f);
/// Pairs i<j with a common origin in h whose images under f are all
/// strictly reversed: every image of j lies below every image of i.
std::vector<std::pair<std::uint32_t, std::uint32_t>> detect_useless_crossings(const Graph& h,
                                                                              const Graph& f);

std::string to_text(const Graph& g);
std::string to_json(const Graph& g);
std::string to_dot(const Graph& g, const std::string& name = "G");

}  // namespace cohere

template <>
struct std::hash<cohere::Graph> {
  std::size_t operator()(const cohere::Graph& g) const noexcept { return g.hash(); }
};
