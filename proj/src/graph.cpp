#include "cohere/graph.hpp"

#include <algorithm>

#include <json.hpp>

#include "cohere/error.hpp"
#include "cohere/typing.hpp"

namespace cohere {

namespace {

GraphKind classify(std::size_t m, std::size_t n, const std::vector<Graph::Pair>& pairs) {
  if (pairs.size() != m) return GraphKind::Relation;
  for (std::size_t i = 0; i < m; ++i)
    if (pairs[i].first != i) return GraphKind::Relation;
  if (m != n) return GraphKind::Function;
  std::vector<bool> hit(n, false);
  bool diagonal = true;
  for (auto [i, j] : pairs) {
    if (hit[j]) return GraphKind::Function;
    hit[j] = true;
    diagonal = diagonal && i == j;
  }
  return diagonal ? GraphKind::Identity : GraphKind::Bijection;
}

}  // namespace

Graph::Graph(std::size_t source, std::size_t target, std::vector<Pair> pairs)
    : source_(source), target_(target), pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (auto [i, j] : pairs_)
    if (i >= source_ || j >= target_)
      throw Error(ErrorKind::SizeMismatch, "graph pair out of range");
  kind_ = classify(source_, target_, pairs_);
}

Graph Graph::identity(std::size_t n) {
  std::vector<Pair> p;
  p.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) p.emplace_back(i, i);
  return Graph(n, n, std::move(p));
}

Graph Graph::empty(std::size_t source, std::size_t target) { return Graph(source, target, {}); }

Graph Graph::function(std::size_t target, const std::vector<std::uint32_t>& values) {
  std::vector<Pair> p;
  p.reserve(values.size());
  for (std::uint32_t i = 0; i < values.size(); ++i) p.emplace_back(i, values[i]);
  return Graph(values.size(), target, std::move(p));
}

std::vector<std::uint32_t> Graph::image(std::uint32_t i) const {
  std::vector<std::uint32_t> out;
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{i, 0});
  for (; it != pairs_.end() && it->first == i; ++it) out.push_back(it->second);
  return out;
}

std::uint32_t Graph::at(std::uint32_t i) const {
  if (kind_ == GraphKind::Relation) throw Error(ErrorKind::Internal, "Graph::at on a relation");
  return pairs_[i].second;
}

Graph Graph::converse() const {
  std::vector<Pair> p;
  p.reserve(pairs_.size());
  for (auto [i, j] : pairs_) p.emplace_back(j, i);
  return Graph(target_, source_, std::move(p));
}

std::size_t Graph::hash() const {
  std::size_t h = source_ * 1000003u ^ target_;
  for (auto [i, j] : pairs_) h = h * 1000003u ^ (std::size_t(i) << 20 | j);
  return h;
}

Graph compose_graphs(const Graph& f, const Graph& g) {
  if (f.target() != g.source())
    throw Error(ErrorKind::SizeMismatch, "cannot compose graphs " + std::to_string(f.source()) + "->" +
                                             std::to_string(f.target()) + " and " +
                                             std::to_string(g.source()) + "->" +
                                             std::to_string(g.target()));
  std::vector<std::vector<std::uint32_t>> next(g.source());
  for (auto [j, k] : g.pairs()) next[j].push_back(k);
  std::vector<Graph::Pair> out;
  for (auto [i, j] : f.pairs())
    for (std::uint32_t k : next[j]) out.emplace_back(i, k);
  return Graph(f.source(), g.target(), std::move(out));
}

Graph tensor_graphs(const Graph& f, const Graph& g) {
  std::vector<Graph::Pair> out = f.pairs();
  const auto ds = static_cast<std::uint32_t>(f.source());
  const auto dt = static_cast<std::uint32_t>(f.target());
  for (auto [i, j] : g.pairs()) out.emplace_back(i + ds, j + dt);
  return Graph(f.source() + g.source(), f.target() + g.target(), std::move(out));
}

Graph under_functor(const Graph& f) {
  std::vector<Graph::Pair> out{{0, 0}};
  for (auto [i, j] : f.pairs()) out.emplace_back(i + 1, j + 1);
  return Graph(f.source() + 1, f.target() + 1, std::move(out));
}

Graph head_graph(const Head& h, CountingMode mode) {
  auto n = [mode](Formula x) { return static_cast<std::uint32_t>(count_occurrences(x, mode)); };
  const auto& x = h.args;
  std::vector<Graph::Pair> p;
  switch (h.kind) {
    case TermKind::Id:
    case TermKind::Assoc:
    case TermKind::AssocInv:
    case TermKind::LUnit:
    case TermKind::LUnitInv:
    case TermKind::RUnit:
    case TermKind::RUnitInv:
    case TermKind::PsiL:
      return Graph::identity(n(head_boundary(h).first));
    case TermKind::Sym: {
      std::uint32_t na = n(x[0]), nb = n(x[1]);
      for (std::uint32_t i = 0; i < na; ++i) p.emplace_back(i, nb + i);
      for (std::uint32_t j = 0; j < nb; ++j) p.emplace_back(na + j, j);
      return Graph(na + nb, na + nb, std::move(p));
    }
    case TermKind::Psi: {
      std::uint32_t na = n(x[0]), nb = n(x[1]);
      p.emplace_back(0, 0);
      for (std::uint32_t i = 1; i <= na; ++i) p.emplace_back(i, i);
      p.emplace_back(na + 1, 0);
      for (std::uint32_t j = 1; j <= nb; ++j) p.emplace_back(na + 1 + j, na + j);
      return Graph(na + nb + 2, na + nb + 1, std::move(p));
    }
    case TermKind::Psi0:
      return Graph::empty(0, 1);
    case TermKind::PsiR: {
      std::uint32_t na = n(x[0]), nb = n(x[1]);
      for (std::uint32_t i = 0; i < na; ++i) p.emplace_back(i, i + 1);
      p.emplace_back(na, 0);
      for (std::uint32_t j = 1; j <= nb; ++j) p.emplace_back(na + j, na + j);
      return Graph(na + nb + 1, na + nb + 1, std::move(p));
    }
    case TermKind::Diag: {
      std::uint32_t k = n(x[0]);
      for (std::uint32_t i = 0; i < k; ++i) {
        p.emplace_back(i, i);
        p.emplace_back(i, k + i);
      }
      return Graph(k, 2 * k, std::move(p));
    }
    case TermKind::Codiag: {
      std::uint32_t k = n(x[0]);
      for (std::uint32_t i = 0; i < k; ++i) {
        p.emplace_back(i, i);
        p.emplace_back(k + i, i);
      }
      return Graph(2 * k, k, std::move(p));
    }
    case TermKind::ToTerminal:
      return Graph::empty(n(x[0]), 0);
    case TermKind::FromInitial:
      return Graph::empty(0, n(x[0]));
    default:
      break;
  }
  throw Error(ErrorKind::Internal, "head_graph on a non-leaf kind");
}

Graph graph_of_unchecked(const ArrowTerm& t, CountingMode mode) {
  switch (t.kind()) {
    case TermKind::Comp:
      return compose_graphs(graph_of_unchecked(t.inner(), mode), graph_of_unchecked(t.outer(), mode));
    case TermKind::Ten:
      return tensor_graphs(graph_of_unchecked(t.left(), mode), graph_of_unchecked(t.right(), mode));
    case TermKind::Under:
      return under_functor(graph_of_unchecked(t.body(), mode));
    default:
      return head_graph(t.head(), mode);
  }
}

Graph graph_of(const ArrowTerm& t, const Theory& th) {
  source_target(t, th);
  return graph_of_unchecked(t, th.counting);
}

namespace {

template <class Pred>
std::vector<std::pair<std::uint32_t, std::uint32_t>> common_origin_pairs(const Graph& h,
                                                                         const Graph& f,
                                                                         Pred pred) {
  if (h.target() != f.source())
    throw Error(ErrorKind::SizeMismatch, "h and f do not compose");
  const auto n = static_cast<std::uint32_t>(f.source());
  std::vector<std::vector<bool>> shared(n, std::vector<bool>(n, false));
  for (std::uint32_t k = 0; k < h.source(); ++k) {
    auto img = h.image(k);
    for (std::size_t a = 0; a < img.size(); ++a)
      for (std::size_t b = a + 1; b < img.size(); ++b) shared[img[a]][img[b]] = true;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (shared[i][j] && pred(f.image(i), f.image(j))) out.emplace_back(i, j);
  return out;
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> detect_short_circuits(const Graph& h,
                                                                           const Graph& f) {
  return common_origin_pairs(h, f, [](const auto& fi, const auto& fj) {
    for (auto x : fi)
      if (std::binary_search(fj.begin(), fj.end(), x)) return true;
    return false;
  });
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> detect_useless_crossings(const Graph& h,
                                                                              const Graph& f) {
  return common_origin_pairs(h, f, [](const auto& fi, const auto& fj) {
    return !fi.empty() && !fj.empty() && fj.back() < fi.front();
  });
}

std::string to_text(const Graph& g) {
  std::string out = std::to_string(g.source()) + " -> " + std::to_string(g.target()) + " " +
                    std::string(to_string(g.kind())) + " {";
  bool first = true;
  for (auto [i, j] : g.pairs()) {
    out += first ? "" : ", ";
    out += std::to_string(i) + "->" + std::to_string(j);
    first = false;
  }
  return out + "}";
}

std::string to_json(const Graph& g) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [i, j] : g.pairs()) pairs.push_back({i, j});
  nlohmann::ordered_json j;
  j["source"] = g.source();
  j["target"] = g.target();
  j["pairs"] = pairs;
  j["kind"] = to_string(g.kind());
  return j.dump();
}

std::string to_dot(const Graph& g, const std::string& name) {
  std::string out = "digraph " + name + " {\n  rankdir=TB;\n";
  out += "  subgraph cluster_s { label=\"source\"; rank=same;";
  for (std::size_t i = 0; i < g.source(); ++i) out += " s" + std::to_string(i) + ";";
  out += " }\n  subgraph cluster_t { label=\"target\"; rank=same;";
  for (std::size_t j = 0; j < g.target(); ++j) out += " t" + std::to_string(j) + ";";
  out += " }\n";
  for (auto [i, j] : g.pairs())
    out += "  s" + std::to_string(i) + " -> t" + std::to_string(j) + " [arrowhead=none];\n";
  return out + "}\n";
}

}  // namespace cohere
