#include "cohere/formula.hpp"

#include <memory>
#include <mutex>
#include <unordered_set>

#include "cohere/error.hpp"

namespace cohere {

namespace detail {

struct FormulaNode {
  FormulaKind kind;
  unsigned functor = 0;
  const std::string* name = nullptr;
  const FormulaNode* left = nullptr;
  const FormulaNode* right = nullptr;
  std::size_t hash = 0;
  std::uint64_t id = 0;
  std::size_t functors = 0;
  std::size_t letters = 0;
  std::size_t units = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct NodeKeyHash {
  std::size_t operator()(const FormulaNode* n) const { return n->hash; }
};

struct NodeKeyEq {
  bool operator()(const FormulaNode* a, const FormulaNode* b) const {
    return a->kind == b->kind && a->functor == b->functor && a->name == b->name &&
           a->left == b->left && a->right == b->right;
  }
};

class Interner {
 public:
  static Interner& instance() {
    static Interner interner;
    return interner;
  }

  const std::string* intern_name(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = names_.find(std::string(name));
    if (it == names_.end()) it = names_.emplace(name).first;
    return &*it;
  }

  const FormulaNode* intern(FormulaNode probe) {
    probe.hash = mix(mix(mix(static_cast<std::size_t>(probe.kind), probe.functor),
                         std::hash<const void*>{}(probe.name)),
                     mix(probe.left ? probe.left->hash : 0, probe.right ? probe.right->hash : 0));
    std::lock_guard lock(mutex_);
    auto it = nodes_.find(&probe);
    if (it != nodes_.end()) return *it;
    auto owned = std::make_unique<FormulaNode>(probe);
    owned->id = storage_.size();
    const FormulaNode* raw = owned.get();
    storage_.push_back(std::move(owned));
    nodes_.insert(raw);
    return raw;
  }

 private:
  std::mutex mutex_;
  std::unordered_set<std::string> names_;
  std::unordered_set<const FormulaNode*, NodeKeyHash, NodeKeyEq> nodes_;
  std::vector<std::unique_ptr<FormulaNode>> storage_;
};

}  // namespace
}  // namespace detail

using detail::FormulaNode;
using detail::Interner;

Formula::Formula() : Formula(unit()) {}

Formula Formula::letter(std::string_view name) {
  FormulaNode n{FormulaKind::Letter};
  n.name = Interner::instance().intern_name(name);
  n.letters = 1;
  return Formula(Interner::instance().intern(n));
}

Formula Formula::unit() {
  static const FormulaNode* node = [] {
    FormulaNode n{FormulaKind::Unit};
    n.units = 1;
    return Interner::instance().intern(n);
  }();
  return Formula(node);
}

Formula Formula::tensor(Formula left, Formula right) {
  FormulaNode n{FormulaKind::Tensor};
  n.left = left.node_;
  n.right = right.node_;
  n.functors = left.node_->functors + right.node_->functors;
  n.letters = left.node_->letters + right.node_->letters;
  n.units = left.node_->units + right.node_->units;
  return Formula(Interner::instance().intern(n));
}

Formula Formula::app(unsigned functor, Formula body) {
  FormulaNode n{FormulaKind::App};
  n.functor = functor;
  n.left = body.node_;
  n.functors = body.node_->functors + 1;
  n.letters = body.node_->letters;
  n.units = body.node_->units;
  return Formula(Interner::instance().intern(n));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return *node_->name; }
unsigned Formula::functor() const { return node_->functor; }
Formula Formula::left() const { return Formula(node_->left); }
Formula Formula::right() const { return Formula(node_->right); }
Formula Formula::body() const { return Formula(node_->left); }
std::size_t Formula::functor_count() const { return node_->functors; }
std::size_t Formula::letter_count() const { return node_->letters; }
std::size_t Formula::unit_count() const { return node_->units; }
std::size_t Formula::hash() const { return node_->hash; }
std::uint64_t Formula::id() const { return node_->id; }

std::strong_ordering operator<=>(Formula a, Formula b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case FormulaKind::Unit:
      return std::strong_ordering::equal;
    case FormulaKind::Letter:
      return a.name().compare(b.name()) <=> 0;
    case FormulaKind::App:
      if (auto c = a.functor() <=> b.functor(); c != 0) return c;
      return a.body() <=> b.body();
    case FormulaKind::Tensor:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
  }
  return std::strong_ordering::equal;
}

bool is_prefix(const Path& prefix, const Path& path) {
  return prefix.size() <= path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

std::string to_string(const Path& path) {
  std::string out;
  for (Step s : path) out += s == Step::Left ? 'L' : s == Step::Right ? 'R' : 'E';
  return out.empty() ? std::string("root") : out;
}

Formula subformula_at(Formula f, const Path& path) {
  for (Step s : path) {
    if (s == Step::Body && f.is_app()) {
      f = f.body();
    } else if (s == Step::Left && f.is_tensor()) {
      f = f.left();
    } else if (s == Step::Right && f.is_tensor()) {
      f = f.right();
    } else {
      throw Error(ErrorKind::BadOccurrence, "no subformula at path " + to_string(path));
    }
  }
  return f;
}

namespace {
Formula replace_from(Formula f, const Path& path, std::size_t depth, Formula replacement) {
  if (depth == path.size()) return replacement;
  Step s = path[depth];
  if (s == Step::Body && f.is_app())
    return Formula::app(f.functor(), replace_from(f.body(), path, depth + 1, replacement));
  if (s == Step::Left && f.is_tensor())
    return Formula::tensor(replace_from(f.left(), path, depth + 1, replacement), f.right());
  if (s == Step::Right && f.is_tensor())
    return Formula::tensor(f.left(), replace_from(f.right(), path, depth + 1, replacement));
  throw Error(ErrorKind::BadOccurrence, "no subformula at path " + to_string(path));
}
}  // namespace

Formula replace_at(Formula f, const Path& path, Formula replacement) {
  return replace_from(f, path, 0, replacement);
}

Formula substitute(Formula f, const std::function<bool(const std::string&, Formula&)>& lookup) {
  switch (f.kind()) {
    case FormulaKind::Unit:
      return f;
    case FormulaKind::Letter: {
      Formula out = f;
      return lookup(f.name(), out) ? out : f;
    }
    case FormulaKind::App:
      return Formula::app(f.functor(), substitute(f.body(), lookup));
    case FormulaKind::Tensor:
      return Formula::tensor(substitute(f.left(), lookup), substitute(f.right(), lookup));
  }
  return f;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::IllTyped: return "IllTyped";
    case ErrorKind::HeadNotInTheory: return "HeadNotInTheory";
    case ErrorKind::UnitForbidden: return "UnitForbidden";
    case ErrorKind::BadOccurrence: return "BadOccurrence";
    case ErrorKind::NoArrow: return "NoArrow";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotPsiFactor: return "NotPsiFactor";
    case ErrorKind::UnitPresent: return "UnitPresent";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

}  // namespace cohere
