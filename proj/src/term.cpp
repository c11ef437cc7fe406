#include "cohere/term.hpp"

#include "cohere/error.hpp"

namespace cohere {

namespace detail {
struct TermNode {
  TermKind kind = TermKind::Id;
  unsigned functor = 0;
  std::array<Formula, 3> args{};
  ArrowTerm a;  // Comp outer, Ten left, Under body
  ArrowTerm b;  // Comp inner, Ten right
  std::size_t pos = Error::npos;
  std::size_t hash = 0;
  std::size_t heads = 0;
};
}  // namespace detail

using detail::TermNode;

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::size_t leaf_arity(TermKind k) {
  switch (k) {
    case TermKind::Id:
    case TermKind::LUnit:
    case TermKind::LUnitInv:
    case TermKind::RUnit:
    case TermKind::RUnitInv:
    case TermKind::Diag:
    case TermKind::Codiag:
    case TermKind::ToTerminal:
    case TermKind::FromInitial:
      return 1;
    case TermKind::Sym:
    case TermKind::Psi:
    case TermKind::PsiL:
    case TermKind::PsiR:
      return 2;
    case TermKind::Assoc:
    case TermKind::AssocInv:
      return 3;
    default:
      return 0;
  }
}

bool has_functor_index(TermKind k) {
  return k == TermKind::Psi || k == TermKind::Psi0 || k == TermKind::PsiL ||
         k == TermKind::PsiR || k == TermKind::Under;
}

std::string_view kind_name(TermKind k) {
  switch (k) {
    case TermKind::Id: return "id";
    case TermKind::Assoc: return "a";
    case TermKind::AssocInv: return "a'";
    case TermKind::LUnit: return "l";
    case TermKind::LUnitInv: return "l'";
    case TermKind::RUnit: return "r";
    case TermKind::RUnitInv: return "r'";
    case TermKind::Sym: return "c";
    case TermKind::Psi: return "psi";
    case TermKind::Psi0: return "psi0";
    case TermKind::PsiL: return "psiL";
    case TermKind::PsiR: return "psiR";
    case TermKind::Diag: return "delta";
    case TermKind::Codiag: return "nabla";
    case TermKind::ToTerminal: return "cobang";
    case TermKind::FromInitial: return "bang";
    case TermKind::Comp: return ".";
    case TermKind::Ten: return "*";
    case TermKind::Under: return "E";
  }
  return "?";
}

std::strong_ordering operator<=>(const Head& a, const Head& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.functor <=> b.functor; c != 0) return c;
  for (std::size_t k = 0; k < leaf_arity(a.kind); ++k)
    if (auto c = a.args[k] <=> b.args[k]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t Head::hash() const {
  std::size_t h = mix(static_cast<std::size_t>(kind), functor);
  for (std::size_t k = 0; k < leaf_arity(kind); ++k) h = mix(h, args[k].hash());
  return h;
}

std::pair<Formula, Formula> head_boundary(const Head& h) {
  const auto& x = h.args;
  const Formula I = Formula::unit();
  switch (h.kind) {
    case TermKind::Id: return {x[0], x[0]};
    case TermKind::Assoc: return {(x[0] * x[1]) * x[2], x[0] * (x[1] * x[2])};
    case TermKind::AssocInv: return {x[0] * (x[1] * x[2]), (x[0] * x[1]) * x[2]};
    case TermKind::LUnit: return {I * x[0], x[0]};
    case TermKind::LUnitInv: return {x[0], I * x[0]};
    case TermKind::RUnit: return {x[0] * I, x[0]};
    case TermKind::RUnitInv: return {x[0], x[0] * I};
    case TermKind::Sym: return {x[0] * x[1], x[1] * x[0]};
    case TermKind::Psi: return {E(h.functor, x[0]) * E(h.functor, x[1]), E(h.functor, x[0] * x[1])};
    case TermKind::Psi0: return {I, E(h.functor, I)};
    case TermKind::PsiL: return {E(h.functor, x[0]) * x[1], E(h.functor, x[0] * x[1])};
    case TermKind::PsiR: return {x[0] * E(h.functor, x[1]), E(h.functor, x[0] * x[1])};
    case TermKind::Diag: return {x[0], x[0] * x[0]};
    case TermKind::Codiag: return {x[0] * x[0], x[0]};
    case TermKind::ToTerminal: return {x[0], I};
    case TermKind::FromInitial: return {I, x[0]};
    default: break;
  }
  throw Error(ErrorKind::Internal, "head_boundary on a non-leaf kind");
}

namespace {

ArrowTerm make_leaf(TermKind k, unsigned functor, std::initializer_list<Formula> args) {
  Head h;
  h.kind = k;
  h.functor = functor;
  std::size_t i = 0;
  for (Formula f : args) h.args[i++] = f;
  return ArrowTerm::leaf(h);
}

}  // namespace

ArrowTerm ArrowTerm::leaf(const Head& h) {
  auto n = std::make_shared<TermNode>();
  n->kind = h.kind;
  n->functor = has_functor_index(h.kind) ? h.functor : 0;
  n->args = h.args;
  for (std::size_t k = leaf_arity(h.kind); k < 3; ++k) n->args[k] = Formula::unit();
  n->hash = mix(static_cast<std::size_t>(n->kind), n->functor);
  for (std::size_t k = 0; k < leaf_arity(h.kind); ++k) n->hash = mix(n->hash, n->args[k].hash());
  n->heads = is_head(h.kind) ? 1 : 0;
  return ArrowTerm(std::move(n));
}

ArrowTerm ArrowTerm::id(Formula a) { return make_leaf(TermKind::Id, 0, {a}); }
ArrowTerm ArrowTerm::assoc(Formula a, Formula b, Formula c) {
  return make_leaf(TermKind::Assoc, 0, {a, b, c});
}
ArrowTerm ArrowTerm::assoc_inv(Formula a, Formula b, Formula c) {
  return make_leaf(TermKind::AssocInv, 0, {a, b, c});
}
ArrowTerm ArrowTerm::lunit(Formula a) { return make_leaf(TermKind::LUnit, 0, {a}); }
ArrowTerm ArrowTerm::lunit_inv(Formula a) { return make_leaf(TermKind::LUnitInv, 0, {a}); }
ArrowTerm ArrowTerm::runit(Formula a) { return make_leaf(TermKind::RUnit, 0, {a}); }
ArrowTerm ArrowTerm::runit_inv(Formula a) { return make_leaf(TermKind::RUnitInv, 0, {a}); }
ArrowTerm ArrowTerm::sym(Formula a, Formula b) { return make_leaf(TermKind::Sym, 0, {a, b}); }
ArrowTerm ArrowTerm::psi(unsigned i, Formula a, Formula b) {
  return make_leaf(TermKind::Psi, i, {a, b});
}
ArrowTerm ArrowTerm::psi0(unsigned i) { return make_leaf(TermKind::Psi0, i, {}); }
ArrowTerm ArrowTerm::psi_l(unsigned i, Formula a, Formula b) {
  return make_leaf(TermKind::PsiL, i, {a, b});
}
ArrowTerm ArrowTerm::psi_r(unsigned i, Formula a, Formula b) {
  return make_leaf(TermKind::PsiR, i, {a, b});
}
ArrowTerm ArrowTerm::diag(Formula a) { return make_leaf(TermKind::Diag, 0, {a}); }
ArrowTerm ArrowTerm::codiag(Formula a) { return make_leaf(TermKind::Codiag, 0, {a}); }
ArrowTerm ArrowTerm::to_terminal(Formula a) { return make_leaf(TermKind::ToTerminal, 0, {a}); }
ArrowTerm ArrowTerm::from_initial(Formula a) { return make_leaf(TermKind::FromInitial, 0, {a}); }

ArrowTerm ArrowTerm::comp(ArrowTerm g, ArrowTerm f) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Comp;
  n->hash = mix(mix(static_cast<std::size_t>(TermKind::Comp), g.hash()), f.hash());
  n->heads = g.head_count() + f.head_count();
  n->a = std::move(g);
  n->b = std::move(f);
  return ArrowTerm(std::move(n));
}

ArrowTerm ArrowTerm::ten(ArrowTerm f, ArrowTerm g) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Ten;
  n->hash = mix(mix(static_cast<std::size_t>(TermKind::Ten), f.hash()), g.hash());
  n->heads = f.head_count() + g.head_count();
  n->a = std::move(f);
  n->b = std::move(g);
  return ArrowTerm(std::move(n));
}

ArrowTerm ArrowTerm::under(unsigned i, ArrowTerm f) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Under;
  n->functor = i;
  n->hash = mix(mix(static_cast<std::size_t>(TermKind::Under), i), f.hash());
  n->heads = f.head_count();
  n->a = std::move(f);
  return ArrowTerm(std::move(n));
}

TermKind ArrowTerm::kind() const { return node_->kind; }
unsigned ArrowTerm::functor() const { return node_->functor; }
std::span<const Formula> ArrowTerm::indices() const {
  return {node_->args.data(), leaf_arity(node_->kind)};
}

Head ArrowTerm::head() const {
  Head h;
  h.kind = node_->kind;
  h.functor = node_->functor;
  h.args = node_->args;
  return h;
}

const ArrowTerm& ArrowTerm::outer() const { return node_->a; }
const ArrowTerm& ArrowTerm::inner() const { return node_->b; }
const ArrowTerm& ArrowTerm::left() const { return node_->a; }
const ArrowTerm& ArrowTerm::right() const { return node_->b; }
const ArrowTerm& ArrowTerm::body() const { return node_->a; }

std::size_t ArrowTerm::source_pos() const { return node_->pos; }

ArrowTerm ArrowTerm::with_source_pos(std::size_t pos) const {
  auto n = std::make_shared<TermNode>(*node_);
  n->pos = pos;
  return ArrowTerm(std::move(n));
}

std::size_t ArrowTerm::head_count() const { return node_->heads; }
std::size_t ArrowTerm::hash() const { return node_->hash; }

bool operator==(const ArrowTerm& x, const ArrowTerm& y) {
  const TermNode* a = x.node_.get();
  const TermNode* b = y.node_.get();
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->functor != b->functor) return false;
  switch (a->kind) {
    case TermKind::Comp:
    case TermKind::Ten:
      return x.left() == y.left() && x.right() == y.right();
    case TermKind::Under:
      return x.body() == y.body();
    default:
      return a->args == b->args;
  }
}

ArrowTerm substitute(const ArrowTerm& t,
                     const std::function<bool(const std::string&, Formula&)>& lookup) {
  switch (t.kind()) {
    case TermKind::Comp:
      return ArrowTerm::comp(substitute(t.outer(), lookup), substitute(t.inner(), lookup));
    case TermKind::Ten:
      return ArrowTerm::ten(substitute(t.left(), lookup), substitute(t.right(), lookup));
    case TermKind::Under:
      return ArrowTerm::under(t.functor(), substitute(t.body(), lookup));
    default: {
      Head h = t.head();
      for (std::size_t k = 0; k < leaf_arity(h.kind); ++k) h.args[k] = substitute(h.args[k], lookup);
      return ArrowTerm::leaf(h);
    }
  }
}

}  // namespace cohere
