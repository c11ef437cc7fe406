#include "cohere/normalize.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <optional>

#include "cohere/error.hpp"

namespace cohere {

namespace {

bool psi_like(FactorKind k) { return k == FactorKind::Psi || k == FactorKind::BigPsi; }

StrictTerm tensor_all(const std::vector<StrictTerm>& parts) {
  std::optional<StrictTerm> acc;
  for (const auto& p : parts) acc = acc ? StrictTerm::ten(*acc, p) : p;
  return acc ? *acc : StrictTerm::id(StrictFormula());
}

StrictTerm then(const std::optional<StrictTerm>& acc, const StrictTerm& next) {
  return acc ? StrictTerm::comp(next, *acc) : next;
}

// Generator tree of a strict object, each node labelled by a position.
struct Node {
  bool is_e = false;
  unsigned functor = 0;
  std::string name;
  std::size_t label = 0;
  bool created = false;
  std::vector<Node> kids;
};

void build(const StrictFormula& s, std::vector<Node>& out, std::size_t& counter) {
  for (Formula a : s.atoms()) {
    Node n;
    n.label = counter++;
    if (a.is_app()) {
      n.is_e = true;
      n.functor = a.functor();
      build(strictify_formula(a.body()), n.kids, counter);
    } else {
      n.name = a.name();
    }
    out.push_back(std::move(n));
  }
}

std::vector<Node> tree_of(const StrictFormula& s) {
  std::vector<Node> out;
  std::size_t counter = 0;
  build(s, out, counter);
  return out;
}

Formula atom_of(const Node& n);

StrictFormula seq(const std::vector<Node>& c, std::size_t from, std::size_t to) {
  std::vector<Formula> atoms;
  for (std::size_t k = from; k < to; ++k) atoms.push_back(atom_of(c[k]));
  return StrictFormula::from_atoms(atoms);
}

StrictFormula seq(const std::vector<Node>& c) { return seq(c, 0, c.size()); }

Formula atom_of(const Node& n) {
  return n.is_e ? strict_app(n.functor, seq(n.kids)).atoms().front() : Formula::letter(n.name);
}

void find_label(const std::vector<Node>& c, std::size_t y, std::vector<std::size_t>& path,
                std::vector<std::vector<std::size_t>>& out) {
  for (std::size_t k = 0; k < c.size(); ++k) {
    path.push_back(k);
    if (c[k].is_e && c[k].label == y) out.push_back(path);
    find_label(c[k].kids, y, path, out);
    path.pop_back();
  }
}

// Factor whose head replaces c[lo..hi] inside the container reached by `parent`.
Factor context(std::vector<Node>& root, const std::vector<std::size_t>& parent, std::size_t lo,
               std::size_t hi) {
  Factor f;
  f.levels.clear();
  std::vector<Node>* c = &root;
  for (std::size_t idx : parent) {
    f.levels.push_back({seq(*c, 0, idx), seq(*c, idx + 1, c->size())});
    f.functors.push_back((*c)[idx].functor);
    c = &(*c)[idx].kids;
  }
  f.levels.push_back({seq(*c, 0, lo), seq(*c, hi + 1, c->size())});
  return f;
}

std::vector<Node>& container(std::vector<Node>& root, const std::vector<std::size_t>& parent) {
  std::vector<Node>* c = &root;
  for (std::size_t idx : parent) c = &(*c)[idx].kids;
  return *c;
}

void strip_created(std::vector<Node>& c) {
  std::erase_if(c, [](const Node& n) { return n.created; });
  for (auto& n : c) strip_created(n.kids);
}

bool same_shape(const std::vector<Node>& a, const std::vector<Node>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].label != b[k].label || a[k].is_e != b[k].is_e || a[k].functor != b[k].functor ||
        a[k].name != b[k].name || !same_shape(a[k].kids, b[k].kids))
      return false;
  return true;
}

StrictTerm create(const Node& n) {
  StrictTerm p = StrictTerm::psi0(n.functor);
  if (n.kids.empty()) return p;
  std::vector<StrictTerm> parts;
  for (const auto& k : n.kids) parts.push_back(create(k));
  return StrictTerm::comp(StrictTerm::under(n.functor, tensor_all(parts)), p);
}

bool has_created(const std::vector<Node>& c) {
  return std::any_of(c.begin(), c.end(),
                     [](const Node& n) { return n.created || has_created(n.kids); });
}

// B' → B, inserting the created subtrees.
StrictTerm h_part(const std::vector<Node>& c) {
  std::vector<StrictTerm> parts;
  std::vector<Node> run;
  auto flush = [&] {
    if (!run.empty()) parts.push_back(StrictTerm::id(seq(run)));
    run.clear();
  };
  for (const auto& n : c) {
    if (n.created) {
      flush();
      parts.push_back(create(n));
    } else if (n.is_e && has_created(n.kids)) {
      flush();
      parts.push_back(StrictTerm::under(n.functor, h_part(n.kids)));
    } else {
      Node copy = n;
      strip_created(copy.kids);
      run.push_back(copy);
    }
  }
  flush();
  return parts.size() == 1 ? parts.front() : tensor_all(parts);
}

void mark_created(std::vector<Node>& c, const std::vector<bool>& hit, bool inside) {
  for (auto& n : c) {
    n.created = inside || (n.is_e && !hit[n.label]);
    mark_created(n.kids, hit, n.created);
  }
}

void check_heads(const ArrowTerm& t, bool allow_sym) {
  switch (t.kind()) {
    case TermKind::Comp:
      check_heads(t.outer(), allow_sym);
      check_heads(t.inner(), allow_sym);
      return;
    case TermKind::Ten:
      check_heads(t.left(), allow_sym);
      check_heads(t.right(), allow_sym);
      return;
    case TermKind::Under:
      check_heads(t.body(), allow_sym);
      return;
    case TermKind::Id:
    case TermKind::Psi:
    case TermKind::Psi0:
      return;
    case TermKind::Sym:
      if (allow_sym) return;
      [[fallthrough]];
    default:
      throw Error(ErrorKind::PreconditionViolated,
                  "normalizer does not accept " + std::string(kind_name(t.kind())),
                  t.source_pos());
  }
}

// Replays the developed input on a generator tree and records which
// equations its rearrangement needs.
std::vector<std::string> trace_steps(const Developed& d) {
  std::vector<std::string> steps;
  auto log = [&](const std::string& s) {
    if (steps.empty() || steps.back() != s) steps.push_back(s);
  };
  std::vector<Node> x = tree_of(d.source);
  std::optional<std::size_t> last_tau;
  std::optional<std::size_t> last_kappa;
  for (std::size_t j = 0; j < d.factors.size(); ++j) {
    const Factor& f = d.factors[j];
    std::vector<Node>* c = &x;
    for (std::size_t k = 0; k < f.functors.size(); ++k)
      c = &(*c)[f.levels[k].left.atoms().size()].kids;
    std::size_t lo = f.levels.back().left.atoms().size();
    switch (f.kind) {
      case FactorKind::Psi: {
        Node& u = (*c)[lo];
        Node& v = (*c)[lo + 1];
        if (u.created && !v.created) log("(ψl)");
        if (v.created && !u.created) log("(ψr)");
        u.created = u.created && v.created;
        for (auto& k : v.kids) u.kids.push_back(std::move(k));
        c->erase(c->begin() + static_cast<std::ptrdiff_t>(lo) + 1);
        std::size_t t = tau(d, j);
        std::size_t kp = kappa(f);
        if (last_tau && *last_tau > t) log("(naturality)");
        if (last_tau && *last_tau == t && last_kappa && *last_kappa != kp) log("(ψa)");
        last_tau = t;
        last_kappa = kp;
        break;
      }
      case FactorKind::Psi0: {
        Node n;
        n.is_e = true;
        n.functor = f.head.functor;
        n.created = true;
        c->insert(c->begin() + static_cast<std::ptrdiff_t>(lo), std::move(n));
        break;
      }
      case FactorKind::Sym: {
        std::size_t na = strictify_formula(f.head.args[0]).atoms().size();
        std::size_t nb = strictify_formula(f.head.args[1]).atoms().size();
        if (na == 0 || nb == 0) log("(c l)");
        else if (na > 1 || nb > 1) log("(hexagon)");
        auto first = c->begin() + static_cast<std::ptrdiff_t>(lo);
        std::rotate(first, first + static_cast<std::ptrdiff_t>(na),
                    first + static_cast<std::ptrdiff_t>(na + nb));
        break;
      }
      default:
        break;
    }
  }
  return steps;
}

struct Core {
  StrictFormula source, target;
  StrictTerm h = StrictTerm::id(StrictFormula());
  std::vector<Factor> g;
  std::vector<Block> blocks;
  std::vector<std::string> steps;
};

void sort_level(std::vector<Node>& root, const std::vector<std::size_t>& parent,
                std::vector<Factor>& out) {
  std::vector<Node>& c = container(root, parent);
  for (std::size_t pass = 0; pass < c.size(); ++pass) {
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      if (c[k].label < c[k + 1].label) continue;
      Factor f = context(root, parent, k, k + 1);
      f.kind = FactorKind::Sym;
      f.head = {TermKind::Sym, 0, {atom_of(c[k]), atom_of(c[k + 1])}};
      out.push_back(std::move(f));
      std::swap(c[k], c[k + 1]);
    }
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k].is_e) continue;
    auto child = parent;
    child.push_back(k);
    sort_level(root, child, out);
  }
}

std::optional<Core> realize_core(const StrictFormula& source, const StrictFormula& target,
                                 const std::vector<std::size_t>& labels, bool symmetric) {
  Core nf;
  nf.source = source;
  nf.target = target;
  std::vector<Node> x = tree_of(source);
  std::vector<Node> b = tree_of(target);
  std::size_t nb = target.embedded().functor_count() + target.embedded().letter_count();
  if (labels.size() != source.embedded().functor_count() + source.embedded().letter_count())
    return std::nullopt;
  std::vector<bool> hit(nb, false);
  for (std::size_t l : labels) {
    if (l >= nb) return std::nullopt;
    hit[l] = true;
  }
  std::function<void(std::vector<Node>&)> apply = [&](std::vector<Node>& c) {
    for (auto& n : c) {
      n.label = labels[n.label];
      apply(n.kids);
    }
  };
  apply(x);
  mark_created(b, hit, false);

  std::vector<Node> bprime = b;
  strip_created(bprime);

  std::vector<std::size_t> path;
  std::vector<std::vector<std::size_t>> found;
  for (std::size_t y = 0; y < nb; ++y) {
    found.clear();
    find_label(x, y, path, found);
    if (found.size() < 2) continue;
    Block blk;
    std::vector<std::size_t> parent(found[0].begin(), found[0].end() - 1);
    for (const auto& p : found)
      if (p.size() != found[0].size() ||
          !std::equal(parent.begin(), parent.end(), p.begin(), p.end() - 1))
        return std::nullopt;
    while (true) {
      std::vector<Node>& c = container(x, parent);
      std::vector<std::size_t> at;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k].is_e && c[k].label == y) at.push_back(k);
      if (at.size() < 2) break;
      std::size_t u = at[0], v = at[1];
      if (c[u].functor != c[v].functor) return std::nullopt;
      if (!symmetric && v != u + 1) return std::nullopt;
      Factor f = context(x, parent, u, v);
      f.head = {TermKind::Psi, c[u].functor, {seq(c[u].kids).embedded(), seq(c[v].kids).embedded()}};
      f.gap = seq(c, u + 1, v);
      f.kind = f.gap.empty() ? FactorKind::Psi : FactorKind::BigPsi;
      blk.factors.push_back(std::move(f));
      Node moved = std::move(c[v]);
      c.erase(c.begin() + static_cast<std::ptrdiff_t>(v));
      for (auto& k : moved.kids) c[u].kids.push_back(std::move(k));
    }
    nf.blocks.push_back(std::move(blk));
  }

  if (symmetric) sort_level(x, {}, nf.g);
  if (!same_shape(x, bprime)) return std::nullopt;
  nf.h = has_created(b) ? h_part(b) : StrictTerm::id(nf.target);

  // τ of each block, read off the assembled factor sequence.
  Developed full{nf.source, nf.target, {}};
  for (const auto& blk : nf.blocks)
    for (const auto& f : blk.factors) full.factors.push_back(f);
  for (const auto& f : nf.g) full.factors.push_back(f);
  for (const auto& f : develop(nf.h).factors) full.factors.push_back(f);
  std::size_t j = 0;
  for (auto& blk : nf.blocks) {
    blk.tau = tau(full, j);
    j += blk.factors.size();
  }
  return nf;
}

Core normalize_core(const StrictTerm& t, bool symmetric) {
  check_heads(t.term(), symmetric);
  Graph gr = graph_of(t, CountingMode::AllGenerators);
  std::vector<std::size_t> labels;
  for (std::uint32_t i = 0; i < gr.source(); ++i) labels.push_back(gr.at(i));
  auto nf = realize_core(t.source(), t.target(), labels, symmetric);
  if (!nf) throw Error(ErrorKind::Internal, "normal form does not reach target");
  nf->steps = trace_steps(develop(t));
  return *nf;
}

StrictTerm assemble(const StrictFormula& source, const std::vector<Block>& blocks,
                    const std::vector<Factor>& g, const StrictTerm& h) {
  std::optional<StrictTerm> acc;
  for (const auto& blk : blocks)
    for (const auto& f : blk.factors) acc = then(acc, f.term());
  for (const auto& f : g) acc = then(acc, f.term());
  if (h.term().kind() != TermKind::Id || !acc) acc = then(acc, h);
  (void)source;
  return *acc;
}

nlohmann::ordered_json factor_json(const Factor& f, bool with_kappa) {
  nlohmann::ordered_json j;
  j["term"] = to_string(f);
  if (with_kappa) j["kappa"] = kappa(f);
  return j;
}

nlohmann::ordered_json core_json(const StrictFormula& s, const StrictFormula& t,
                                 const std::vector<Block>& blocks, const std::vector<Factor>* g,
                                 const StrictTerm& h, const std::vector<std::string>& steps) {
  nlohmann::ordered_json j;
  j["source"] = to_string(s);
  j["target"] = to_string(t);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& blk : blocks) {
    nlohmann::ordered_json b;
    b["tau"] = blk.tau;
    b["factors"] = nlohmann::ordered_json::array();
    for (const auto& f : blk.factors) b["factors"].push_back(factor_json(f, true));
    arr.push_back(b);
  }
  j["blocks"] = arr;
  if (g) {
    j["g"] = nlohmann::ordered_json::array();
    for (const auto& f : *g) j["g"].push_back(factor_json(f, false));
  }
  j["h"] = to_string(h);
  j["steps"] = steps;
  return j;
}

std::string core_text(const StrictFormula& s, const StrictFormula& t,
                      const std::vector<Block>& blocks, const std::vector<Factor>* g,
                      const StrictTerm& h) {
  std::string out = to_string(s) + " -> " + to_string(t) + "\n";
  for (const auto& blk : blocks) {
    out += "block tau=" + std::to_string(blk.tau) + ":";
    for (const auto& f : blk.factors) out += " " + to_string(f);
    out += "\n";
  }
  if (g) {
    out += "g:";
    for (const auto& f : *g) out += " " + to_string(f);
    if (g->empty()) out += " id";
    out += "\n";
  }
  out += "h: " + to_string(h) + "\n";
  return out;
}

}  // namespace

StrictTerm Factor::head_term() const {
  if (kind == FactorKind::BigPsi)
    return big_psi(head.functor, strictify_formula(head.args[0]), strictify_formula(head.args[1]),
                   gap);
  return StrictTerm::leaf(head);
}

StrictTerm Factor::term() const {
  StrictTerm h = head_term();
  for (std::size_t k = levels.size(); k-- > 0;) {
    if (!levels[k].left.empty()) h = StrictTerm::ten(StrictTerm::id(levels[k].left), h);
    if (!levels[k].right.empty()) h = StrictTerm::ten(h, StrictTerm::id(levels[k].right));
    if (k > 0) h = StrictTerm::under(functors[k - 1], h);
  }
  return h;
}

void Factor::wrap_left(const StrictFormula& x) { levels.front().left = x + levels.front().left; }
void Factor::wrap_right(const StrictFormula& x) { levels.front().right = levels.front().right + x; }
void Factor::wrap_under(unsigned i) {
  levels.insert(levels.begin(), Level{});
  functors.insert(functors.begin(), i);
}

std::string to_string(const Factor& f) {
  if (f.kind != FactorKind::BigPsi) return to_string(f.term());
  // Ψ is printed as one head inside its context.
  std::string head = "Psi" + std::to_string(f.head.functor) + "{" +
                     to_string(strictify_formula(f.head.args[0])) + "," +
                     to_string(strictify_formula(f.head.args[1])) + ";" + to_string(f.gap) + "}";
  for (std::size_t k = f.levels.size(); k-- > 0;) {
    if (!f.levels[k].left.empty()) head = "(id{" + to_string(f.levels[k].left) + "} * " + head + ")";
    if (!f.levels[k].right.empty())
      head = "(" + head + " * id{" + to_string(f.levels[k].right) + "})";
    if (k > 0) head = "E" + std::to_string(f.functors[k - 1]) + "[" + head + "]";
  }
  return head;
}

namespace {

void develop_into(const StrictTerm& t, std::vector<Factor>& out) {
  const ArrowTerm& a = t.term();
  switch (a.kind()) {
    case TermKind::Comp:
      develop_into(as_strict(a.inner()), out);
      develop_into(as_strict(a.outer()), out);
      return;
    case TermKind::Ten: {
      StrictTerm f = as_strict(a.left());
      StrictTerm g = as_strict(a.right());
      std::vector<Factor> fs, gs;
      develop_into(f, fs);
      develop_into(g, gs);
      for (auto& x : fs) {
        x.wrap_right(g.source());
        out.push_back(std::move(x));
      }
      for (auto& x : gs) {
        x.wrap_left(f.target());
        out.push_back(std::move(x));
      }
      return;
    }
    case TermKind::Under: {
      std::vector<Factor> fs;
      develop_into(as_strict(a.body()), fs);
      for (auto& x : fs) {
        x.wrap_under(a.functor());
        out.push_back(std::move(x));
      }
      return;
    }
    case TermKind::Id:
      return;
    default:
      break;
  }
  Factor f;
  f.head = a.head();
  switch (f.head.kind) {
    case TermKind::Psi: f.kind = FactorKind::Psi; break;
    case TermKind::Psi0: f.kind = FactorKind::Psi0; break;
    case TermKind::Sym: f.kind = FactorKind::Sym; break;
    default: f.kind = FactorKind::Other; break;
  }
  out.push_back(std::move(f));
}

}  // namespace

Developed develop(const StrictTerm& t) {
  Developed d{t.source(), t.target(), {}};
  develop_into(t, d.factors);
  return d;
}

StrictTerm compose(const Developed& d) {
  std::optional<StrictTerm> acc;
  for (const auto& f : d.factors) acc = then(acc, f.term());
  return acc ? *acc : StrictTerm::id(d.source);
}

std::size_t kappa(const Factor& f) {
  if (!psi_like(f.kind)) throw Error(ErrorKind::NotPsiFactor, "not a psi factor: " + to_string(f));
  std::size_t n = f.functors.size();
  for (const auto& l : f.levels) n += l.left.embedded().functor_count();
  return n;
}

std::size_t tau(const Developed& d, std::size_t j) {
  if (j >= d.factors.size()) throw Error(ErrorKind::BadOccurrence, "no factor " + std::to_string(j));
  std::size_t k = kappa(d.factors[j]);
  std::vector<std::size_t> cur{k};
  for (std::size_t m = j + 1; m < d.factors.size(); ++m) {
    Graph g = graph_of(d.factors[m].term(), CountingMode::FunctorsOnly);
    std::vector<std::size_t> next;
    for (std::size_t x : cur)
      for (auto y : g.image(static_cast<std::uint32_t>(x))) next.push_back(y);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
  }
  if (cur.size() != 1)
    throw Error(ErrorKind::PreconditionViolated, "tau is not a single position");
  return cur.front();
}

StrictTerm big_psi(unsigned i, const StrictFormula& a1, const StrictFormula& a2,
                   const StrictFormula& b) {
  StrictTerm p = StrictTerm::psi(i, a1, a2);
  if (b.empty()) return p;
  StrictFormula ea1 = strict_app(i, a1), ea2 = strict_app(i, a2);
  return StrictTerm::comp(StrictTerm::ten(p, StrictTerm::id(b)),
                          StrictTerm::ten(StrictTerm::id(ea1), StrictTerm::sym(b, ea2)));
}

NormalFormM normalize_M(const StrictTerm& t) {
  Core c = normalize_core(t, false);
  NormalFormM nf;
  nf.source = c.source;
  nf.target = c.target;
  nf.h = c.h;
  nf.blocks = std::move(c.blocks);
  nf.steps = std::move(c.steps);
  return nf;
}

NormalFormMc normalize_Mc(const StrictTerm& t) {
  Core c = normalize_core(t, true);
  NormalFormMc nf;
  nf.source = c.source;
  nf.target = c.target;
  nf.h = c.h;
  nf.g = std::move(c.g);
  nf.blocks = std::move(c.blocks);
  nf.steps = std::move(c.steps);
  return nf;
}

StrictTerm readback(const NormalFormM& nf) { return assemble(nf.source, nf.blocks, {}, nf.h); }
StrictTerm readback(const NormalFormMc& nf) { return assemble(nf.source, nf.blocks, nf.g, nf.h); }

std::string to_text(const NormalFormM& nf) {
  return core_text(nf.source, nf.target, nf.blocks, nullptr, nf.h);
}
std::string to_text(const NormalFormMc& nf) {
  return core_text(nf.source, nf.target, nf.blocks, &nf.g, nf.h);
}
std::string to_json(const NormalFormM& nf) {
  return core_json(nf.source, nf.target, nf.blocks, nullptr, nf.h, nf.steps).dump(2);
}
std::string to_json(const NormalFormMc& nf) {
  return core_json(nf.source, nf.target, nf.blocks, &nf.g, nf.h, nf.steps).dump(2);
}

}  // namespace cohere

namespace cohere {

std::optional<NormalFormMc> realize(const StrictFormula& source, const StrictFormula& target,
                                    const std::vector<std::size_t>& labels, bool symmetric) {
  auto c = realize_core(source, target, labels, symmetric);
  if (!c) return std::nullopt;
  NormalFormMc nf;
  nf.source = c->source;
  nf.target = c->target;
  nf.h = c->h;
  nf.g = std::move(c->g);
  nf.blocks = std::move(c->blocks);
  return nf;
}

}  // namespace cohere
