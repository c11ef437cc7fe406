#include "cohere/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <json.hpp>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "cohere/equations.hpp"
#include "cohere/error.hpp"
#include "cohere/normalize.hpp"
#include "cohere/typing.hpp"

namespace cohere {

using Path8 = std::vector<std::uint8_t>;

namespace {

std::vector<Formula> body_atoms(Formula app) { return strictify_formula(app.body()).atoms(); }

std::optional<std::vector<Formula>> container(const StrictFormula& s, const Path8& path) {
  std::vector<Formula> c = s.atoms();
  for (std::uint8_t k : path) {
    if (k >= c.size() || !c[k].is_app()) return std::nullopt;
    c = body_atoms(c[k]);
  }
  return c;
}

StrictFormula replace_container(const StrictFormula& s, const Path8& path, std::size_t depth,
                                const std::vector<Formula>& atoms) {
  if (depth == path.size()) return StrictFormula::from_atoms(atoms);
  std::vector<Formula> c = s.atoms();
  Formula a = c[path[depth]];
  StrictFormula inner = replace_container(strictify_formula(a.body()), path, depth + 1, atoms);
  c[path[depth]] = strict_app(a.functor(), inner).embedded();
  return StrictFormula::from_atoms(c);
}

StrictFormula run(const std::vector<Formula>& c, std::size_t from, std::size_t to) {
  return StrictFormula::from_atoms({c.begin() + static_cast<std::ptrdiff_t>(from),
                                    c.begin() + static_cast<std::ptrdiff_t>(to)});
}

bool has_prefix(const Path8& p, const Path8& prefix) {
  return p.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

// Index of step s at nesting depth d: a path entry, or lo at its own level.
std::size_t at_level(const Move& s, std::size_t d) { return d < s.path.size() ? s.path[d] : s.lo; }

void shift_level(Move& s, std::size_t d, long delta) {
  if (d < s.path.size())
    s.path[d] = static_cast<std::uint8_t>(static_cast<long>(s.path[d]) + delta);
  else
    s.lo = static_cast<std::uint8_t>(static_cast<long>(s.lo) + delta);
}

}  // namespace

std::optional<std::pair<Move, Move>> exchange(const Move& s1, const Move& s2) {
  const Path8 &p1 = s1.path, &p2 = s2.path;
  std::size_t m = 0;
  while (m < p1.size() && m < p2.size() && p1[m] == p2[m]) ++m;
  long in1 = static_cast<long>(s1.in()), out1 = static_cast<long>(s1.out());
  long in2 = static_cast<long>(s2.in()), out2 = static_cast<long>(s2.out());
  Move a = s2, b = s1;
  if (m < p1.size() && m < p2.size()) return std::pair{a, b};
  if (p1.size() == m && p2.size() == m) {
    if (s2.lo + in2 <= s1.lo) {
      shift_level(b, m, out2 - in2);
      return std::pair{a, b};
    }
    if (s2.lo >= s1.lo + out1) {
      shift_level(a, m, in1 - out1);
      return std::pair{a, b};
    }
    return std::nullopt;
  }
  if (p1.size() == m) {
    long k = p2[m];
    if (k < s1.lo) return std::pair{a, b};
    if (k >= s1.lo + out1) {
      shift_level(a, m, in1 - out1);
      return std::pair{a, b};
    }
    return std::nullopt;
  }
  long k = p1[m];
  if (k < s2.lo) return std::pair{a, b};
  if (k >= s2.lo + in2) {
    shift_level(b, m, out2 - in2);
    return std::pair{a, b};
  }
  return std::nullopt;
}

namespace {

// Frame-free footprint of a step: atoms are named by identities that
// survive the steps around them.
struct Footprint {
  std::vector<std::uint32_t> chain;  // container and its ancestors; 0 is the root
  std::vector<std::uint32_t> in, out;
  std::uint32_t left = 0, right = 0;  // neighbours of an insertion
  bool insertion = false;
};

struct INode {
  std::uint32_t id;
  std::vector<INode> kids;
};

std::vector<Footprint> footprints(const StrictFormula& source, const std::vector<Move>& steps) {
  std::uint32_t next = 1;
  std::function<std::vector<INode>(const StrictFormula&)> build = [&](const StrictFormula& s) {
    std::vector<INode> out;
    for (Formula a : s.atoms()) {
      INode n{next++, {}};
      if (a.is_app()) n.kids = build(strictify_formula(a.body()));
      out.push_back(std::move(n));
    }
    return out;
  };
  std::vector<INode> root = build(source);
  std::vector<Footprint> fps;
  for (const Move& s : steps) {
    Footprint fp;
    fp.chain.push_back(0);
    std::vector<INode>* c = &root;
    for (std::uint8_t k : s.path) {
      fp.chain.push_back((*c)[k].id);
      c = &(*c)[k].kids;
    }
    switch (s.kind) {
      case MoveKind::Psi: {
        INode& u = (*c)[s.lo];
        INode& v = (*c)[s.lo + 1];
        fp.in = {u.id, v.id};
        INode m{next++, std::move(u.kids)};
        for (auto& k : v.kids) m.kids.push_back(std::move(k));
        fp.out = {m.id};
        c->erase(c->begin() + s.lo, c->begin() + s.lo + 2);
        c->insert(c->begin() + s.lo, std::move(m));
        break;
      }
      case MoveKind::Psi0: {
        fp.insertion = true;
        fp.left = s.lo > 0 ? (*c)[s.lo - 1].id : 0;
        fp.right = s.lo < c->size() ? (*c)[s.lo].id : 0;
        INode w{next++, {}};
        fp.out = {w.id};
        c->insert(c->begin() + s.lo, std::move(w));
        break;
      }
      case MoveKind::Sym: {
        for (std::size_t k = s.lo; k < std::size_t(s.lo + s.na + s.nb); ++k) fp.in.push_back((*c)[k].id);
        std::rotate(c->begin() + s.lo, c->begin() + s.lo + s.na, c->begin() + s.lo + s.na + s.nb);
        fp.out = fp.in;
        break;
      }
    }
    fps.push_back(std::move(fp));
  }
  return fps;
}

bool meets(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  for (auto x : a)
    if (x != 0 && std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

// Whether step j (later) cannot be exchanged with step i (earlier).
bool conflict(const Footprint& i, const Footprint& j) {
  if (i.chain == j.chain) {
    if (meets(j.in, i.out)) return true;
    if (j.insertion && j.left && j.right &&
        std::find(i.out.begin(), i.out.end(), j.left) != i.out.end() &&
        std::find(i.out.begin(), i.out.end(), j.right) != i.out.end())
      return true;
  }
  if (meets(j.chain, i.out)) return true;
  if (meets(i.chain, j.in)) return true;
  return false;
}

}  // namespace

std::vector<std::vector<bool>> dependency_order(const StrictFormula& source, const std::vector<Move>& steps) {
  auto fps = footprints(source, steps);
  std::size_t n = steps.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      if (reach[i][j]) continue;
      if (conflict(fps[i], fps[j])) {
        reach[i][j] = true;
        for (std::size_t h = 0; h < i; ++h)
          if (reach[h][i]) reach[h][j] = true;
      }
    }
  return reach;
}

namespace {

// Reorders v into the permutation `order` of its indices by adjacent swaps.
std::optional<std::vector<Move>> arrange(std::vector<Move> v, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> ids(v.size());
  std::iota(ids.begin(), ids.end(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    std::size_t j = std::find(ids.begin() + static_cast<std::ptrdiff_t>(pos), ids.end(), order[pos]) - ids.begin();
    for (std::size_t k = j; k > pos; --k) {
      auto r = exchange(v[k - 1], v[k]);
      if (!r) return std::nullopt;
      v[k - 1] = r->first;
      v[k] = r->second;
      std::swap(ids[k - 1], ids[k]);
    }
  }
  return v;
}

Factor factor_for(const std::vector<Formula>& root, const Move& s) {
  Factor f;
  f.levels.clear();
  std::vector<Formula> c = root;
  for (std::uint8_t k : s.path) {
    f.levels.push_back({run(c, 0, k), run(c, k + 1, c.size())});
    f.functors.push_back(c[k].functor());
    c = body_atoms(c[k]);
  }
  std::size_t hi = s.lo + s.in();
  f.levels.push_back({run(c, 0, s.lo), run(c, hi, c.size())});
  switch (s.kind) {
    case MoveKind::Psi:
      f.kind = FactorKind::Psi;
      f.head = {TermKind::Psi, c[s.lo].functor(), {c[s.lo].body(), c[s.lo + 1].body()}};
      break;
    case MoveKind::Psi0:
      f.kind = FactorKind::Psi0;
      f.head = {TermKind::Psi0, s.functor, {}};
      break;
    case MoveKind::Sym:
      f.kind = FactorKind::Sym;
      f.head = {TermKind::Sym, 0,
                {run(c, s.lo, s.lo + s.na).embedded(), run(c, s.lo + s.na, hi).embedded()}};
      break;
  }
  return f;
}

std::set<unsigned> functors_in(Formula f) {
  std::set<unsigned> out;
  std::function<void(Formula)> go = [&](Formula g) {
    switch (g.kind()) {
      case FormulaKind::App:
        out.insert(g.functor());
        go(g.body());
        break;
      case FormulaKind::Tensor:
        go(g.left());
        go(g.right());
        break;
      default:
        break;
    }
  };
  go(f);
  return out;
}

struct Kinds {
  bool psi = false, psi0 = false, sym = false;
};

Kinds kinds_for(const Theory& th) {
  return {th.allows(TermKind::Psi), th.allows(TermKind::Psi0), th.allows(TermKind::Sym)};
}

void steps_from(const StrictFormula& s, const Kinds& k, const std::set<unsigned>& functors,
                std::vector<Move>& out) {
  std::function<void(const std::vector<Formula>&, Path8&)> go = [&](const std::vector<Formula>& c,
                                                                     Path8& path) {
    std::size_t n = c.size();
    if (k.psi)
      for (std::size_t lo = 0; lo + 1 < n; ++lo)
        if (c[lo].is_app() && c[lo + 1].is_app() && c[lo].functor() == c[lo + 1].functor())
          out.push_back({path, static_cast<std::uint8_t>(lo), MoveKind::Psi, 0, 0, 0});
    if (k.psi0)
      for (std::size_t lo = 0; lo <= n; ++lo)
        for (unsigned f : functors)
          out.push_back({path, static_cast<std::uint8_t>(lo), MoveKind::Psi0,
                         static_cast<std::uint8_t>(f), 0, 0});
    if (k.sym)
      for (std::size_t lo = 0; lo < n; ++lo)
        for (std::size_t na = 1; lo + na < n; ++na)
          for (std::size_t nb = 1; lo + na + nb <= n; ++nb)
            out.push_back({path, static_cast<std::uint8_t>(lo), MoveKind::Sym, 0,
                           static_cast<std::uint8_t>(na), static_cast<std::uint8_t>(nb)});
    for (std::size_t j = 0; j < n; ++j)
      if (c[j].is_app()) {
        path.push_back(static_cast<std::uint8_t>(j));
        go(body_atoms(c[j]), path);
        path.pop_back();
      }
  };
  Path8 path;
  go(s.atoms(), path);
}

}  // namespace

std::size_t DevTermHash::operator()(const DevTerm& t) const {
  std::size_t h = t.source.embedded().hash();
  for (const auto& s : t.steps) {
    for (auto c : s.path) h = h * 131 + c;
    h = h * 1000003 + (s.lo | (static_cast<std::size_t>(s.kind) << 8) |
                       (static_cast<std::size_t>(s.functor) << 12) |
                       (static_cast<std::size_t>(s.na) << 16) | (static_cast<std::size_t>(s.nb) << 24));
  }
  return h;
}

std::optional<StrictFormula> apply_step(const StrictFormula& s, const Move& step) {
  auto c = container(s, step.path);
  if (!c) return std::nullopt;
  std::size_t n = c->size();
  switch (step.kind) {
    case MoveKind::Psi: {
      if (std::size_t(step.lo) + 1 >= n) return std::nullopt;
      Formula u = (*c)[step.lo], v = (*c)[step.lo + 1];
      if (!u.is_app() || !v.is_app() || u.functor() != v.functor()) return std::nullopt;
      Formula m = strict_app(u.functor(), strictify_formula(u.body()) + strictify_formula(v.body()))
                      .embedded();
      c->erase(c->begin() + step.lo, c->begin() + step.lo + 2);
      c->insert(c->begin() + step.lo, m);
      break;
    }
    case MoveKind::Psi0:
      if (step.lo > n) return std::nullopt;
      c->insert(c->begin() + step.lo, strict_app(step.functor, StrictFormula()).embedded());
      break;
    case MoveKind::Sym:
      if (step.na == 0 || step.nb == 0 || std::size_t(step.lo + step.na + step.nb) > n) return std::nullopt;
      std::rotate(c->begin() + step.lo, c->begin() + step.lo + step.na,
                  c->begin() + step.lo + step.na + step.nb);
      break;
  }
  return replace_container(s, step.path, 0, *c);
}

StrictFormula target_of(const DevTerm& t) {
  StrictFormula x = t.source;
  for (const auto& s : t.steps) {
    auto y = apply_step(x, s);
    if (!y) throw Error(ErrorKind::IllTyped, "step does not apply");
    x = *y;
  }
  return x;
}

namespace {

// Least linear extension from `pos` on. Equal moves may come from different
// elements, so ties branch.
void canonical_from(std::vector<Move>& v, std::size_t pos) {
  for (; pos < v.size(); ++pos) {
    std::optional<Move> best;
    std::vector<std::size_t> ties;
    for (std::size_t j = pos; j < v.size(); ++j) {
      Move cur = v[j];
      bool ok = true;
      for (std::size_t k = j; k > pos && ok; --k) {
        auto r = exchange(v[k - 1], cur);
        if (r) cur = r->first;
        ok = r.has_value();
      }
      if (!ok) continue;
      if (!best || cur < *best) {
        best = cur;
        ties = {j};
      } else if (cur == *best) {
        ties.push_back(j);
      }
    }
    auto bring = [&](std::vector<Move>& w, std::size_t j) {
      for (std::size_t k = j; k > pos; --k) {
        auto r = exchange(w[k - 1], w[k]);
        w[k - 1] = r->first;
        w[k] = r->second;
      }
    };
    if (ties.size() == 1) {
      bring(v, ties[0]);
      continue;
    }
    std::optional<std::vector<Move>> least;
    for (std::size_t j : ties) {
      std::vector<Move> w = v;
      bring(w, j);
      canonical_from(w, pos + 1);
      if (!least || w < *least) least = std::move(w);
    }
    v = std::move(*least);
    return;
  }
}

}  // namespace

DevTerm canonical(DevTerm t) {
  canonical_from(t.steps, 0);
  return t;
}

DevTerm to_dev(const StrictTerm& t) {
  DevTerm d{t.source(), {}};
  for (const Factor& f : develop(t).factors) {
    Move s;
    for (std::size_t k = 0; k < f.functors.size(); ++k)
      s.path.push_back(static_cast<std::uint8_t>(f.levels[k].left.atoms().size()));
    s.lo = static_cast<std::uint8_t>(f.levels.back().left.atoms().size());
    switch (f.kind) {
      case FactorKind::Psi:
        s.kind = MoveKind::Psi;
        break;
      case FactorKind::Psi0:
        s.kind = MoveKind::Psi0;
        s.functor = static_cast<std::uint8_t>(f.head.functor);
        break;
      case FactorKind::Sym:
        s.kind = MoveKind::Sym;
        s.na = static_cast<std::uint8_t>(strictify_formula(f.head.args[0]).atoms().size());
        s.nb = static_cast<std::uint8_t>(strictify_formula(f.head.args[1]).atoms().size());
        if (s.na == 0 || s.nb == 0) continue;  // c with a unit index is the identity
        break;
      default:
        throw Error(ErrorKind::PreconditionViolated,
                    "the oracle handles psi, psi0 and c only, not " +
                        std::string(kind_name(f.head.kind)));
    }
    d.steps.push_back(std::move(s));
  }
  return canonical(std::move(d));
}

StrictTerm to_strict(const DevTerm& t) {
  std::optional<StrictTerm> acc;
  StrictFormula x = t.source;
  for (const auto& s : t.steps) {
    StrictTerm f = factor_for(x.atoms(), s).term();
    acc = acc ? StrictTerm::comp(f, *acc) : f;
    x = f.target();
  }
  return acc ? *acc : StrictTerm::id(t.source);
}

std::string to_string(const DevTerm& t) { return to_string(to_strict(t)); }

bool oracle_supports(const Theory& th) {
  return th.tag == TheoryTag::E || th.tag == TheoryTag::Mminus || th.tag == TheoryTag::M ||
         th.tag == TheoryTag::Mc;
}

namespace {

void require_support(const Theory& th) {
  if (!oracle_supports(th))
    throw Error(ErrorKind::PreconditionViolated,
                "the oracle runs for E, Mminus, M and Mc only, not " + std::string(th.name));
}

// All canonical step sequences of at most `bound` steps out of `a`, level by
// level: a canonical prefix followed by one step covers every sequence. When
// `max_functors` is set, only terms whose targets can still get down to that
// many functor occurrences are extended; a step changes the count by one.
std::vector<DevTerm> enumerate_from(const StrictFormula& a, std::size_t bound, const Theory& th,
                                    const std::set<unsigned>& functors,
                                    std::size_t max_functors = SIZE_MAX) {
  Kinds k = kinds_for(th);
  std::unordered_set<DevTerm, DevTermHash> seen;
  std::vector<DevTerm> out{DevTerm{a, {}}};
  seen.insert(out.front());
  std::vector<std::pair<std::size_t, StrictFormula>> level{{0, a}};
  for (std::size_t d = 1; d <= bound; ++d) {
    std::vector<std::pair<std::size_t, StrictFormula>> next;
    for (const auto& [idx, x] : level) {
      std::vector<Move> moves;
      steps_from(x, k, functors, moves);
      for (const auto& s : moves) {
        auto y = apply_step(x, s);
        if (!y) continue;
        if (max_functors != SIZE_MAX && y->embedded().functor_count() > max_functors + (bound - d))
          continue;
        DevTerm t = out[idx];
        t.steps.push_back(s);
        t = canonical(std::move(t));
        if (!seen.insert(t).second) continue;
        out.push_back(std::move(t));
        next.emplace_back(out.size() - 1, std::move(*y));
      }
    }
    level = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Strict equation instances

struct Tpl {
  bool meta = false;
  std::string name;
  std::vector<Tpl> kids;
};

std::vector<Tpl> template_of(const StrictFormula& s) {
  std::vector<Tpl> out;
  for (Formula a : s.atoms()) {
    Tpl t;
    if (a.is_app()) {
      t.kids = template_of(strictify_formula(a.body()));
    } else {
      t.meta = true;
      t.name = a.name();
    }
    out.push_back(std::move(t));
  }
  return out;
}

struct Binding {
  std::map<std::string, std::vector<Formula>> runs;
  unsigned functor = 0;
};

void match_seq(const std::vector<Tpl>& tpl, std::size_t ti, const std::vector<Formula>& obj,
               std::size_t oi, Binding& b, std::vector<Binding>& out) {
  if (ti == tpl.size()) {
    if (oi == obj.size()) out.push_back(b);
    return;
  }
  const Tpl& t = tpl[ti];
  if (t.meta) {
    auto it = b.runs.find(t.name);
    if (it != b.runs.end()) {
      const auto& r = it->second;
      if (oi + r.size() <= obj.size() && std::equal(r.begin(), r.end(), obj.begin() + static_cast<std::ptrdiff_t>(oi)))
        match_seq(tpl, ti + 1, obj, oi + r.size(), b, out);
      return;
    }
    for (std::size_t len = 0; oi + len <= obj.size(); ++len) {
      b.runs[t.name] = {obj.begin() + static_cast<std::ptrdiff_t>(oi), obj.begin() + static_cast<std::ptrdiff_t>(oi + len)};
      match_seq(tpl, ti + 1, obj, oi + len, b, out);
    }
    b.runs.erase(t.name);
    return;
  }
  if (oi >= obj.size() || !obj[oi].is_app()) return;
  unsigned f = obj[oi].functor();
  if (b.functor != 0 && b.functor != f) return;
  unsigned saved = b.functor;
  b.functor = f;
  std::vector<Binding> inner;
  match_seq(t.kids, 0, body_atoms(obj[oi]), 0, b, inner);
  for (auto& bi : inner) match_seq(tpl, ti + 1, obj, oi + 1, bi, out);
  b.functor = saved;
}

struct StrictScheme {
  std::string tag;
  std::vector<Tpl> source;
  const EquationScheme* scheme;
};

struct Replacement {
  std::string tag;
  bool left_to_right;
  std::vector<Move> steps;
};

class Index {
 public:
  explicit Index(const Theory& th) : th_(th) {
    for (const auto& eq : equations_for(th)) {
      TypePair tp = source_target(eq.lhs);
      schemes_.push_back({eq.tag, template_of(strictify_formula(tp.source)), &eq});
      std::set<std::string> seen;
      std::function<void(const std::vector<Tpl>&)> check = [&](const std::vector<Tpl>& ts) {
        for (const auto& t : ts) {
          if (t.meta && !seen.insert(t.name).second) by_shape_ = false;
          check(t.kids);
        }
      };
      check(schemes_.back().source);
    }
    // Window length bound from a generic instance of every scheme.
    const char* letters[] = {"p", "q", "r", "s", "p", "q", "r", "s", "p"};
    for (const auto& sc : schemes_) {
      Instantiation inst;
      std::size_t k = 0;
      for (const auto& m : sc.scheme->metavariables) inst[m] = Formula::letter(letters[k++ % 9]);
      auto [l, r] = instantiate(*sc.scheme, inst, 1);
      DevTerm dl = to_dev(strictify_term(l)), dr = to_dev(strictify_term(r));
      max_window_ = std::max({max_window_, dl.steps.size(), dr.steps.size()});
    }
  }

  std::size_t max_window() const { return max_window_; }

  // Moves do not mention letters, so when no metavariable repeats, windows
  // that differ only in their letters have the same replacements.
  const std::vector<Replacement>& lookup(const DevTerm& window) {
    DevTerm key{by_shape_ ? shape(window.source) : window.source, window.steps};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Replacement> found;
    std::vector<Formula> obj = key.source.atoms();
    for (const auto& sc : schemes_) {
      std::vector<Binding> bindings;
      Binding b;
      match_seq(sc.source, 0, obj, 0, b, bindings);
      for (const auto& bd : bindings) {
        const auto& [l, r] = instance(sc, bd);
        if (l.steps == r.steps) continue;
        if (l.steps == window.steps) found.push_back({sc.tag, true, r.steps});
        if (r.steps == window.steps) found.push_back({sc.tag, false, l.steps});
      }
    }
    return cache_.emplace(key, std::move(found)).first->second;
  }

 private:
  const std::pair<DevTerm, DevTerm>& instance(const StrictScheme& sc, const Binding& b) {
    std::string key = sc.tag + "/" + std::to_string(b.functor);
    Instantiation inst;
    for (const auto& [name, atoms] : b.runs) {
      Formula f = StrictFormula::from_atoms(atoms).embedded();
      inst[name] = f;
      key += "/" + name + "=" + std::to_string(f.id());
    }
    auto it = instances_.find(key);
    if (it != instances_.end()) return it->second;
    // Unbound metavariables do not occur in the source; they stay letters.
    auto [l, r] = instantiate(*sc.scheme, inst, b.functor == 0 ? 1 : b.functor);
    DevTerm dl = to_dev(strictify_term(l)), dr = to_dev(strictify_term(r));
    return instances_.emplace(key, std::pair{dl, dr}).first->second;
  }

  static StrictFormula shape(const StrictFormula& s) {
    std::vector<Formula> atoms = s.atoms();
    for (Formula& a : atoms)
      a = a.is_app() ? strict_app(a.functor(), shape(strictify_formula(a.body()))).embedded()
                     : Formula::letter("x");
    return StrictFormula::from_atoms(atoms);
  }

  Theory th_;
  bool by_shape_ = true;
  std::vector<StrictScheme> schemes_;
  std::size_t max_window_ = 0;
  std::unordered_map<DevTerm, std::vector<Replacement>, DevTermHash> cache_;
  std::unordered_map<std::string, std::pair<DevTerm, DevTerm>> instances_;
};

Index& index_for(const Theory& th) {
  static std::mutex mutex;
  static std::map<TheoryTag, std::unique_ptr<Index>> indices;
  std::lock_guard lock(mutex);
  auto& p = indices[th.tag];
  if (!p) p = std::make_unique<Index>(th);
  return *p;
}

// ---------------------------------------------------------------------------
// Naturality of ψ and c: a step inside an argument slides across the head.

std::size_t body_size(const StrictFormula& x, const Path8& path, std::size_t k) {
  auto c = container(x, path);
  return body_atoms((*c)[k]).size();
}

Move rebase_into(Move s, std::size_t depth, std::size_t atom, long shift) {
  // s lies inside the body of some atom at `depth`; move it into `atom`'s
  // body, shifting its index inside that body by `shift`.
  s.path[depth] = static_cast<std::uint8_t>(atom);
  shift_level(s, depth + 1, shift);
  return s;
}

// s1 then s2 (dependent), frame x before s1. Returns s2' then s1'.
std::vector<std::vector<Move>> slides(const StrictFormula& x, const Move& s1, const Move& s2) {
  std::vector<std::vector<Move>> out;
  std::size_t d;
  // ψ after a step inside one of its arguments.
  if (s2.kind == MoveKind::Psi && has_prefix(s1.path, s2.path) && s1.path.size() > s2.path.size()) {
    d = s2.path.size();
    std::size_t k = s1.path[d];
    if (k == s2.lo) out.push_back({s2, s1});
    if (k == s2.lo + 1u) {
      long a = static_cast<long>(body_size(x, s2.path, s2.lo));
      out.push_back({s2, rebase_into(s1, d, s2.lo, a)});
    }
  }
  // A step inside the body made by ψ.
  if (s1.kind == MoveKind::Psi && has_prefix(s2.path, s1.path) && s2.path.size() > s1.path.size() &&
      s2.path[s1.path.size()] == s1.lo) {
    d = s1.path.size();
    std::size_t a = body_size(x, s1.path, s1.lo);
    std::size_t lo = at_level(s2, d + 1), hi = lo + (s2.path.size() == d + 1 ? s2.in() : 1);
    if (hi <= a) out.push_back({s2, s1});
    if (lo >= a) out.push_back({rebase_into(s2, d, s1.lo + 1, -static_cast<long>(a)), s1});
  }
  // c after a step inside one of its arguments.
  if (s2.kind == MoveKind::Sym && has_prefix(s1.path, s2.path)) {
    d = s2.path.size();
    std::size_t lo = at_level(s1, d);
    std::size_t hi = lo + (s1.path.size() == d ? s1.out() : 1);
    long delta = static_cast<long>(s1.in()) - static_cast<long>(s1.out());
    if (s1.path.size() > d) delta = 0;
    Move c = s2, t = s1;
    if (lo >= s2.lo && hi <= s2.lo + s2.na) {
      c.na = static_cast<std::uint8_t>(static_cast<long>(c.na) + delta);
      shift_level(t, d, s2.nb);
      out.push_back(c.na > 0 ? std::vector<Move>{c, t} : std::vector<Move>{t});
    } else if (lo >= std::size_t(s2.lo + s2.na) && hi <= std::size_t(s2.lo + s2.na + s2.nb)) {
      c.nb = static_cast<std::uint8_t>(static_cast<long>(c.nb) + delta);
      shift_level(t, d, -static_cast<long>(s2.na));
      out.push_back(c.nb > 0 ? std::vector<Move>{c, t} : std::vector<Move>{t});
    }
  }
  // A step inside an argument moved by c.
  if (s1.kind == MoveKind::Sym && has_prefix(s2.path, s1.path)) {
    d = s1.path.size();
    std::size_t lo = at_level(s2, d);
    std::size_t hi = lo + (s2.path.size() == d ? s2.in() : 1);
    long delta = static_cast<long>(s2.out()) - static_cast<long>(s2.in());
    if (s2.path.size() > d) delta = 0;
    std::size_t ystart = s1.lo, xstart = s1.lo + s1.nb, end = s1.lo + s1.na + s1.nb;
    if (lo >= ystart && hi <= xstart) {
      Move t = s2, c = s1;
      shift_level(t, d, static_cast<long>(s1.na));
      c.nb = static_cast<std::uint8_t>(static_cast<long>(c.nb) + delta);
      out.push_back({t, c});
    }
    if (lo >= xstart && hi <= end) {
      Move t = s2, c = s1;
      shift_level(t, d, -static_cast<long>(s1.nb));
      c.na = static_cast<std::uint8_t>(static_cast<long>(c.na) + delta);
      out.push_back({t, c});
    }
  }
  return out;
}

Path8 common_prefix(const std::vector<Move>& w) {
  Path8 p = w.front().path;
  for (const auto& s : w) {
    std::size_t m = 0;
    while (m < p.size() && m < s.path.size() && p[m] == s.path[m]) ++m;
    p.resize(m);
  }
  return p;
}

const char* const kDerivedHexagon = "(hexagon, mirrored)";

// With `derived`, also the mirrored hexagon c_{AB,C} = (c_{A,C} ⊗ B)(A ⊗ c_{B,C}),
// which follows from (c c) and (hexagon) through a detour of four moves.
std::vector<TraceStep> rewrites_impl(const DevTerm& t, const Theory& th, bool derived) {
  std::vector<TraceStep> out;
  const auto& v = t.steps;
  std::size_t n = v.size();
  Index& idx = index_for(th);
  auto reach = dependency_order(t.source, v);
  std::size_t lmax = std::max<std::size_t>(idx.max_window(), 2);

  auto emit = [&](const std::string& tag, const Path8& pos, bool ltr, std::vector<Move> steps) {
    DevTerm r = canonical(DevTerm{t.source, std::move(steps)});
    out.push_back({tag, pos, ltr, std::move(r)});
  };

  // Sides that are identities strictly: the other side may be inserted
  // between any two moves.
  StrictFormula x = t.source;
  for (std::size_t gap = 0; gap <= n; ++gap) {
    std::function<void(const std::vector<Formula>&, Path8&)> visit = [&](const std::vector<Formula>& c,
                                                                          Path8& p) {
      for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = a + 1; b <= c.size(); ++b)
          for (const auto& rep : idx.lookup(DevTerm{run(c, a, b), {}})) {
            std::vector<Move> s(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(gap));
            for (Move m : rep.steps) {
              shift_level(m, 0, static_cast<long>(a));
              m.path.insert(m.path.begin(), p.begin(), p.end());
              s.push_back(std::move(m));
            }
            s.insert(s.end(), v.begin() + static_cast<std::ptrdiff_t>(gap), v.end());
            Path8 pos = p;
            pos.push_back(static_cast<std::uint8_t>(a));
            emit(rep.tag, pos, rep.left_to_right, std::move(s));
          }
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k].is_app()) {
          p.push_back(static_cast<std::uint8_t>(k));
          visit(body_atoms(c[k]), p);
          p.pop_back();
        }
    };
    Path8 root;
    visit(x.atoms(), root);
    if (gap < n) x = *apply_step(x, v[gap]);
  }

  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size > lmax) continue;
    auto in_u = [&](std::size_t i) { return (mask >> i) & 1u; };
    // Convex: nothing outside U between two elements of U.
    bool convex = true;
    std::vector<bool> before(n, false);
    for (std::size_t k = 0; k < n && convex; ++k) {
      if (in_u(k)) continue;
      bool above = false, below = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!in_u(i)) continue;
        if (i < k && reach[i][k]) above = true;
        if (k < i && reach[k][i]) below = true;
      }
      if (above && below) convex = false;
      before[k] = below;
    }
    if (!convex) continue;
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < n; ++k)
      if (!in_u(k) && before[k]) order.push_back(k);
    std::size_t start = order.size();
    for (std::size_t k = 0; k < n; ++k)
      if (in_u(k)) order.push_back(k);
    for (std::size_t k = 0; k < n; ++k)
      if (!in_u(k) && !before[k]) order.push_back(k);
    auto arranged = arrange(v, order);
    if (!arranged) continue;
    StrictFormula x = t.source;
    for (std::size_t k = 0; k < start; ++k) x = *apply_step(x, (*arranged)[k]);
    std::vector<Move> window(arranged->begin() + static_cast<std::ptrdiff_t>(start),
                             arranged->begin() + static_cast<std::ptrdiff_t>(start + size));
    auto splice = [&](const std::vector<Move>& middle) {
      std::vector<Move> s(arranged->begin(), arranged->begin() + static_cast<std::ptrdiff_t>(start));
      s.insert(s.end(), middle.begin(), middle.end());
      s.insert(s.end(), arranged->begin() + static_cast<std::ptrdiff_t>(start + size), arranged->end());
      return s;
    };

    if (derived && size == 1 && window[0].kind == MoveKind::Sym)
      for (std::uint8_t a = 1; a < window[0].na; ++a) {
        Move first = window[0], second = window[0];
        first.lo = static_cast<std::uint8_t>(first.lo + a);
        first.na = static_cast<std::uint8_t>(first.na - a);
        second.na = a;
        emit(kDerivedHexagon, window[0].path, true, splice({first, second}));
      }
    if (derived && size == 2 && window[0].kind == MoveKind::Sym && window[1].kind == MoveKind::Sym &&
        window[0].path == window[1].path && window[0].nb == window[1].nb &&
        window[0].lo == window[1].lo + window[1].na) {
      Move merged = window[1];
      merged.na = static_cast<std::uint8_t>(window[1].na + window[0].na);
      emit(kDerivedHexagon, window[0].path, false, splice({merged}));
    }
    if (size == 2) {
      std::size_t i = order[start], j = order[start + 1];
      if (reach[std::min(i, j)][std::max(i, j)])
        for (auto& sl : slides(x, window[0], window[1]))
          emit("(naturality)", common_prefix(window), true, splice(sl));
    }

    // Equation instances on every region holding the window.
    Path8 common = common_prefix(window);
    for (std::size_t depth = 0; depth <= common.size(); ++depth) {
      Path8 p(common.begin(), common.begin() + static_cast<std::ptrdiff_t>(depth));
      auto c = container(x, p);
      if (!c) continue;
      // Original extent of the window at this level.
      std::vector<std::pair<std::size_t, std::size_t>> orig;
      for (std::size_t k = 0; k < c->size(); ++k) orig.push_back({k, k + 1});
      std::size_t tlo = c->size(), thi = 0;
      auto touch = [&](std::size_t a, std::size_t b) {
        tlo = std::min(tlo, a);
        thi = std::max(thi, b);
      };
      for (const auto& s : window) {
        if (s.path.size() > depth) {
          auto [a, b] = orig[s.path[depth]];
          touch(a, b);
          continue;
        }
        std::size_t lo = s.lo;
        if (s.kind == MoveKind::Psi0) {
          std::size_t pt = lo < orig.size() ? orig[lo].first : (orig.empty() ? 0 : orig.back().second);
          touch(pt, pt);
          orig.insert(orig.begin() + static_cast<std::ptrdiff_t>(lo), {pt, pt});
        } else if (s.kind == MoveKind::Psi) {
          auto a = orig[lo], b = orig[lo + 1];
          touch(a.first, b.second);
          orig.erase(orig.begin() + static_cast<std::ptrdiff_t>(lo), orig.begin() + static_cast<std::ptrdiff_t>(lo) + 2);
          orig.insert(orig.begin() + static_cast<std::ptrdiff_t>(lo), {a.first, b.second});
        } else {
          std::size_t a = orig[lo].first, b = orig[lo + s.na + s.nb - 1].second;
          for (std::size_t k = lo; k < lo + s.na + s.nb; ++k) {
            a = std::min(a, orig[k].first);
            b = std::max(b, orig[k].second);
          }
          touch(a, b);
          std::rotate(orig.begin() + lo, orig.begin() + lo + s.na, orig.begin() + lo + s.na + s.nb);
        }
      }
      for (std::size_t a = tlo; a <= tlo; ++a)
        for (std::size_t b = std::max(thi, a); b <= std::max(thi, a); ++b) {
          std::vector<Move> rel = window;
          for (auto& s : rel) {
            s.path.erase(s.path.begin(), s.path.begin() + static_cast<std::ptrdiff_t>(depth));
            shift_level(s, 0, -static_cast<long>(a));
          }
          DevTerm w = canonical(DevTerm{run(*c, a, b), rel});
          for (const auto& rep : idx.lookup(w)) {
            std::vector<Move> back = rep.steps;
            for (auto& s : back) {
              shift_level(s, 0, static_cast<long>(a));
              s.path.insert(s.path.begin(), p.begin(), p.end());
            }
            Path8 pos = p;
            pos.push_back(static_cast<std::uint8_t>(a));
            emit(rep.tag, pos, rep.left_to_right, splice(back));
          }
        }
    }
  }
  return out;
}

}  // namespace

std::vector<TraceStep> rewrites(const DevTerm& t, const Theory& th) {
  require_support(th);
  return rewrites_impl(t, th, false);
}

namespace {

DevTerm dev_of(const ArrowTerm& t) { return to_dev(strictify_term(t)); }

std::vector<TraceStep> path_of(const std::unordered_map<DevTerm, std::pair<DevTerm, TraceStep>, DevTermHash>& parent,
                               const DevTerm& root, DevTerm at) {
  std::vector<TraceStep> steps;
  while (!(at == root)) {
    const auto& [prev, step] = parent.at(at);
    steps.push_back(step);
    at = prev;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

TraceStep reversed(const TraceStep& s, const DevTerm& result) {
  return {s.eq, s.position, !s.left_to_right, result};
}

}  // namespace

namespace {

using Memo = std::unordered_map<DevTerm, std::vector<TraceStep>, DevTermHash>;

// Bidirectional breadth-first search between canonical f and g.
ClosureResult search(const DevTerm& f, const DevTerm& g, const Theory& th, std::size_t step_bound,
                     bool derived, Memo& memo) {
  ClosureResult res;
  if (f == g) {
    res.proved = true;
    return res;
  }
  using Parent = std::unordered_map<DevTerm, std::pair<DevTerm, TraceStep>, DevTermHash>;
  // Detours through longer terms are searched only when shorter ones fail.
  std::size_t base = std::max(f.steps.size(), g.steps.size());
  for (std::size_t slack : {0, 2, 4}) {
    std::size_t max_len = base + slack;
    Parent pf, pg;
    std::unordered_set<DevTerm, DevTermHash> sf{f}, sg{g};
    std::deque<DevTerm> qf{f}, qg{g};
    bool cut = false;
    while ((!qf.empty() || !qg.empty()) && res.explored < step_bound) {
      bool forward = !qf.empty() && (qg.empty() || qf.size() <= qg.size());
      auto& q = forward ? qf : qg;
      auto& seen = forward ? sf : sg;
      auto& other = forward ? sg : sf;
      auto& parent = forward ? pf : pg;
      DevTerm cur = q.front();
      q.pop_front();
      ++res.explored;
      auto it = memo.find(cur);
      if (it == memo.end()) it = memo.emplace(cur, rewrites_impl(cur, th, derived)).first;
      for (const auto& step : it->second) {
        if (step.result.steps.size() > max_len) {
          cut = true;
          continue;
        }
        if (seen.count(step.result)) continue;
        const DevTerm& next = step.result;
        seen.insert(next);
        parent.emplace(next, std::pair{cur, step});
        if (other.count(next)) {
          // Join the two half-paths.
          std::vector<TraceStep> trace = path_of(pf, f, next);
          auto right = path_of(pg, g, next);
          for (std::size_t k = right.size(); k-- > 0;)
            trace.push_back(reversed(right[k], k == 0 ? g : right[k - 1].result));
          res.proved = true;
          res.trace = std::move(trace);
          return res;
        }
        q.push_back(next);
      }
    }
    if (!cut || res.explored >= step_bound) break;
  }
  return res;
}

bool uses_derived(const Theory& th) { return th.allows(TermKind::Sym); }

}  // namespace

ClosureResult closure_equal(const DevTerm& f0, const DevTerm& g0, const Theory& th,
                            std::size_t step_bound) {
  require_support(th);
  DevTerm f = canonical(f0), g = canonical(g0);
  if (f.source != g.source || target_of(f) != target_of(g))
    throw Error(ErrorKind::BoundaryMismatch, "terms have different boundaries");
  Memo memo;
  ClosureResult res = search(f, g, th, step_bound, uses_derived(th), memo);
  if (!res.proved) return res;
  // Derived steps are replaced by their derivations from the table.
  std::vector<TraceStep> trace;
  Memo plain;
  DevTerm cur = f;
  for (auto& step : res.trace) {
    if (step.eq != kDerivedHexagon) {
      trace.push_back(step);
    } else {
      ClosureResult sub = search(cur, step.result, th, step_bound, false, plain);
      if (!sub.proved)
        throw Error(ErrorKind::Internal, "no derivation for a mirrored hexagon step");
      res.explored += sub.explored;
      for (auto& s : sub.trace) trace.push_back(std::move(s));
    }
    cur = step.result;
  }
  res.trace = std::move(trace);
  return res;
}

ClosureResult closure_equal(const ArrowTerm& f, const ArrowTerm& g, const Theory& th,
                            std::size_t step_bound) {
  require_support(th);
  TypePair tf = source_target(f, th), tg = source_target(g, th);
  if (tf != tg) throw Error(ErrorKind::BoundaryMismatch, "terms have different boundaries");
  return closure_equal(dev_of(f), dev_of(g), th, step_bound);
}

bool replay(const DevTerm& f, const std::vector<TraceStep>& trace, const DevTerm& g,
            const Theory& th) {
  DevTerm cur = canonical(f);
  for (const auto& step : trace) {
    bool found = false;
    for (const auto& r : rewrites(cur, th))
      if (r.eq == step.eq && r.result == step.result) {
        found = true;
        break;
      }
    if (!found) {
      // A reversed step is a forward rewrite of its result.
      for (const auto& r : rewrites(step.result, th))
        if (r.eq == step.eq && r.result == cur) {
          found = true;
          break;
        }
    }
    if (!found) return false;
    cur = step.result;
  }
  return cur == canonical(g);
}

std::string to_json(const std::vector<TraceStep>& trace) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : trace) {
    nlohmann::ordered_json j;
    j["eq"] = s.eq;
    j["position"] = std::vector<int>(s.position.begin(), s.position.end());
    j["direction"] = s.left_to_right ? "LR" : "RL";
    j["result"] = to_string(s.result);
    arr.push_back(j);
  }
  return arr.dump();
}

std::vector<DevTerm> enumerate_strict(const StrictFormula& a, const StrictFormula& b,
                                      std::size_t size_bound, const Theory& th) {
  require_support(th);
  std::vector<DevTerm> out;
  for (auto& t : enumerate_from(a, size_bound, th, functors_in(b.embedded()),
                                b.embedded().functor_count()))
    if (target_of(t) == b) out.push_back(std::move(t));
  return out;
}

std::vector<ArrowTerm> enumerate_arrows(Formula a, Formula b, std::size_t size_bound,
                                        const Theory& th) {
  std::vector<ArrowTerm> out;
  for (const auto& t : enumerate_strict(strictify_formula(a), strictify_formula(b), size_bound, th))
    out.push_back(frame(lift_strict(to_strict(t)), a, b));
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
  std::size_t add() {
    p.push_back(p.size());
    return p.size() - 1;
  }
};

// Grows one breadth-first tree per closure class of a graph class at once and
// merges classes whose trees meet. Returns false when some remain apart.
bool connect(const std::vector<DevTerm>& terms, const std::vector<std::size_t>& members,
             UnionFind& uf, const Theory& th, std::size_t step_bound, Memo& memo,
             std::size_t& explored) {
  auto classes = [&] {
    std::set<std::size_t> c;
    for (std::size_t k : members) c.insert(uf.find(k));
    return c;
  };
  std::size_t base = 0;
  for (std::size_t k : members) base = std::max(base, terms[k].steps.size());
  std::size_t budget = step_bound * (classes().size() - 1);
  for (std::size_t slack : {0, 2, 4}) {
    std::size_t max_len = base + slack;
    // Local ids: a term's node joins the class of the tree that reached it first.
    UnionFind local(0);
    std::vector<std::size_t> top;  // local id -> member index whose class it is in
    std::unordered_map<DevTerm, std::size_t, DevTermHash> owner;
    std::map<std::size_t, std::deque<const DevTerm*>> queue;  // by class in uf
    for (std::size_t k : members) {
      auto [it, fresh] = owner.emplace(terms[k], local.add());
      top.push_back(k);
      queue[uf.find(k)].push_back(&it->first);
    }
    auto cls = [&](std::size_t id) { return uf.find(top[local.find(id)]); };
    auto merge = [&](std::size_t a, std::size_t b) {
      std::size_t ca = cls(a), cb = cls(b);
      if (ca == cb) return;
      local.unite(a, b);
      uf.unite(ca, cb);
      std::size_t c = uf.find(ca), other = c == ca ? cb : ca;
      auto& qa = queue[c];
      for (auto* t : queue[other]) qa.push_back(t);
      queue.erase(other);
    };
    bool cut = false;
    while (queue.size() > 1 && explored < budget) {
      auto best = queue.end();
      for (auto it = queue.begin(); it != queue.end(); ++it)
        if (!it->second.empty() && (best == queue.end() || it->second.size() < best->second.size()))
          best = it;
      if (best == queue.end()) break;
      const DevTerm* cur = best->second.front();
      best->second.pop_front();
      ++explored;
      std::size_t cur_id = owner.at(*cur);
      auto it = memo.find(*cur);
      if (it == memo.end()) it = memo.emplace(*cur, rewrites_impl(*cur, th, uses_derived(th))).first;
      for (const auto& step : it->second) {
        if (step.result.steps.size() > max_len) {
          cut = true;
          continue;
        }
        auto [o, fresh] = owner.emplace(step.result, 0);
        if (!fresh) {
          merge(cur_id, o->second);
          if (queue.size() == 1) break;
          continue;
        }
        o->second = local.add();
        top.push_back(top[local.find(cur_id)]);
        queue[cls(cur_id)].push_back(&o->first);
      }
    }
    if (queue.size() == 1) return true;
    if (!cut || explored >= budget) return false;
  }
  return false;
}

std::vector<Formula> formulas(std::size_t leaves, std::size_t functors) {
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<Formula>> memo;
  auto key = std::pair{leaves, functors};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<Formula> out;
  if (leaves == 1 && functors == 0)
    out = {Formula::letter("p"), Formula::letter("q"), Formula::unit()};
  if (functors > 0)
    for (Formula f : formulas(leaves, functors - 1))
      for (unsigned i : {1u, 2u}) out.push_back(E(i, f));
  for (std::size_t l1 = 1; l1 < leaves; ++l1)
    for (std::size_t f1 = 0; f1 <= functors; ++f1)
      for (Formula a : formulas(l1, f1))
        for (Formula b : formulas(leaves - l1, functors - f1)) out.push_back(a * b);
  return memo[key] = out;
}

}  // namespace

CoherenceReport coherence_report(const Theory& th, std::size_t object_atom_bound,
                                 std::size_t term_size_bound, std::size_t step_bound,
                                 std::size_t functor_bound) {
  require_support(th);
  auto t0 = std::chrono::steady_clock::now();
  CoherenceReport rep;
  rep.theory = th.name;
  rep.object_atom_bound = object_atom_bound;
  rep.functor_bound = functor_bound;
  rep.term_size_bound = term_size_bound;
  rep.step_bound = step_bound;

  std::set<StrictFormula, bool (*)(const StrictFormula&, const StrictFormula&)> objects(
      [](const StrictFormula& a, const StrictFormula& b) { return a.embedded() < b.embedded(); });
  for (std::size_t l = 1; l <= object_atom_bound; ++l)
    for (std::size_t f = 0; f <= functor_bound; ++f)
      for (Formula a : formulas(l, f)) {
        if (!th.unit_allowed && a.unit_count() > 0) continue;
        if (!th.functors_allowed && f > 0) continue;
        objects.insert(strictify_formula(a));
      }
  rep.objects = objects.size();
  std::set<unsigned> functors;
  if (th.functors_allowed) functors = {1, 2};

  auto add_example = [&](const DevTerm& a, const DevTerm& b) {
    if (rep.examples.size() < 20) rep.examples.push_back({to_string(a), to_string(b)});
  };

  for (const StrictFormula& src : objects) {
    std::map<std::uint64_t, std::vector<DevTerm>> by_target;
    for (auto& t : enumerate_from(src, term_size_bound, th, functors, functor_bound)) {
      StrictFormula tgt = target_of(t);
      if (!objects.count(tgt)) continue;
      by_target[tgt.embedded().id()].push_back(std::move(t));
    }
    for (auto& [tid, terms] : by_target) {
      ++rep.boundaries;
      rep.terms += terms.size();
      std::unordered_map<DevTerm, std::size_t, DevTermHash> where;
      std::vector<Graph> graphs;
      for (std::size_t k = 0; k < terms.size(); ++k) {
        where.emplace(terms[k], k);
        graphs.push_back(graph_of(to_strict(terms[k]), th.counting));
      }
      UnionFind uf(terms.size());
      for (std::size_t k = 0; k < terms.size(); ++k)
        for (const auto& r : rewrites(terms[k], th)) {
          auto it = where.find(r.result);
          Graph gr = it != where.end() ? graphs[it->second] : graph_of(to_strict(r.result), th.counting);
          if (gr != graphs[k]) {
            ++rep.soundness_violations;
            add_example(terms[k], r.result);
          }
          if (it != where.end()) uf.unite(k, it->second);
        }
      // Graph classes split into several closure classes get a search.
      std::map<std::size_t, std::vector<std::size_t>> by_graph;
      std::vector<std::size_t> graph_id(terms.size());
      for (std::size_t k = 0; k < terms.size(); ++k) {
        std::size_t g = 0;
        for (; g < k; ++g)
          if (graphs[g] == graphs[k]) break;
        graph_id[k] = graph_id[g];
        if (g == k) graph_id[k] = k;
        by_graph[graph_id[k]].push_back(k);
      }
      rep.graph_classes += by_graph.size();
      Memo memo;
      for (auto& [g, members] : by_graph) {
        std::set<std::size_t> roots;
        for (std::size_t k : members) roots.insert(uf.find(k));
        if (roots.size() < 2) continue;
        ++rep.searches;
        std::size_t explored = 0;
        if (!connect(terms, members, uf, th, step_bound, memo, explored)) {
          std::map<std::size_t, std::size_t> first;
          for (std::size_t k : members) first.emplace(uf.find(k), k);
          rep.unproved_pairs += first.size() - 1;
          if (explored >= step_bound * (roots.size() - 1)) rep.budget_exhausted = true;
          auto a = first.begin(), b = std::next(a);
          add_example(terms[a->second], terms[b->second]);
        }
      }
      std::set<std::size_t> classes;
      for (std::size_t k = 0; k < terms.size(); ++k) classes.insert(uf.find(k));
      rep.closure_classes += classes.size();
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string to_json(const CoherenceReport& r) {
  nlohmann::ordered_json j;
  j["theory"] = r.theory;
  j["bounds"] = {{"object_atoms", r.object_atom_bound},
                 {"functors", r.functor_bound},
                 {"term_size", r.term_size_bound},
                 {"steps", r.step_bound}};
  j["objects"] = r.objects;
  j["boundaries"] = r.boundaries;
  j["terms"] = r.terms;
  j["graph_classes"] = r.graph_classes;
  j["closure_classes"] = r.closure_classes;
  j["soundness_violations"] = r.soundness_violations;
  j["unproved_graph_equal_pairs"] = r.unproved_pairs;
  j["searches"] = r.searches;
  j["budget_exhausted"] = r.budget_exhausted;
  auto ex = nlohmann::ordered_json::array();
  for (const auto& [a, b] : r.examples) ex.push_back({a, b});
  j["examples"] = ex;
  j["seconds"] = r.seconds;
  return j.dump(2);
}

std::string to_table(const CoherenceReport& r) {
  auto row = [](const std::string& k, const std::string& v) {
    std::string s = k;
    s.resize(28, ' ');
    return s + v + "\n";
  };
  std::string out;
  out += row("theory", r.theory);
  out += row("bounds", "atoms " + std::to_string(r.object_atom_bound) + ", functors " +
                           std::to_string(r.functor_bound) + ", heads " +
                           std::to_string(r.term_size_bound) + ", steps " +
                           std::to_string(r.step_bound));
  out += row("objects", std::to_string(r.objects));
  out += row("boundaries", std::to_string(r.boundaries));
  out += row("terms", std::to_string(r.terms));
  out += row("graph classes", std::to_string(r.graph_classes));
  out += row("closure classes", std::to_string(r.closure_classes));
  out += row("soundness violations", std::to_string(r.soundness_violations));
  out += row("unproved graph-equal", std::to_string(r.unproved_pairs));
  out += row("searches", std::to_string(r.searches));
  out += row("budget exhausted", r.budget_exhausted ? "yes" : "no");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", r.seconds);
  out += row("time", buf);
  for (const auto& [a, b] : r.examples) out += "  " + a + "  vs  " + b + "\n";
  return out;
}

}  // namespace cohere
