#include "cohere/strict.hpp"

#include "cohere/error.hpp"
#include "cohere/text.hpp"

namespace cohere {

namespace {

void collect_atoms(Formula a, std::vector<Formula>& out) {
  switch (a.kind()) {
    case FormulaKind::Unit: return;
    case FormulaKind::Letter: out.push_back(a); return;
    case FormulaKind::App:
      out.push_back(E(a.functor(), strictify_formula(a.body()).embedded()));
      return;
    case FormulaKind::Tensor:
      collect_atoms(a.left(), out);
      collect_atoms(a.right(), out);
      return;
  }
}

Formula embed_atoms(const std::vector<Formula>& atoms, std::size_t from = 0) {
  if (from >= atoms.size()) return Formula::unit();
  Formula out = atoms.back();
  for (std::size_t k = atoms.size() - 1; k-- > from;) out = atoms[k] * out;
  return out;
}

using T = ArrowTerm;

T cs(const T& g, const T& f) {
  if (f.kind() == TermKind::Id) return g;
  if (g.kind() == TermKind::Id) return f;
  return T::comp(g, f);
}

T ts(const T& f, const T& g) {
  if (f.kind() == TermKind::Id && g.kind() == TermKind::Id) return T::id(f.index(0) * g.index(0));
  return T::ten(f, g);
}

T us(unsigned i, const T& f) {
  if (f.kind() == TermKind::Id) return T::id(E(i, f.index(0)));
  return T::under(i, f);
}

// emb S1 ⊗ emb S2 → emb(S1 ++ S2)
T merge(const std::vector<Formula>& s1, std::size_t from, const std::vector<Formula>& s2) {
  Formula e2 = embed_atoms(s2);
  if (from >= s1.size()) return T::lunit(e2);
  Formula e1 = embed_atoms(s1, from);
  if (s2.empty()) return T::runit(e1);
  if (from + 1 == s1.size()) return T::id(e1 * e2);
  Formula x = s1[from];
  Formula rest = embed_atoms(s1, from + 1);
  return cs(ts(T::id(x), merge(s1, from + 1, s2)), T::assoc(x, rest, e2));
}

// A → emb(strict A)
T normalize_bracketing(Formula a) {
  switch (a.kind()) {
    case FormulaKind::Unit:
    case FormulaKind::Letter:
      return T::id(a);
    case FormulaKind::App:
      return us(a.functor(), normalize_bracketing(a.body()));
    case FormulaKind::Tensor: {
      T parts = ts(normalize_bracketing(a.left()), normalize_bracketing(a.right()));
      return cs(merge(strictify_formula(a.left()).atoms(), 0, strictify_formula(a.right()).atoms()),
                parts);
    }
  }
  return T::id(a);
}

StrictFormula strict_index(Formula f) { return strictify_formula(f); }

void print_strict_formula(Formula embedded, std::string& out);

void print_atoms(const std::vector<Formula>& atoms, std::string& out) {
  out += '[';
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (k) out += ", ";
    if (atoms[k].is_app()) {
      out += 'E' + std::to_string(atoms[k].functor());
      print_strict_formula(atoms[k].body(), out);
    } else {
      out += atoms[k].name();
    }
  }
  out += ']';
}

void print_strict_formula(Formula embedded, std::string& out) {
  std::vector<Formula> atoms;
  collect_atoms(embedded, atoms);
  print_atoms(atoms, out);
}

void print_strict(const ArrowTerm& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Comp:
      out += '(';
      print_strict(t.outer(), out);
      out += " . ";
      print_strict(t.inner(), out);
      out += ')';
      return;
    case TermKind::Ten:
      out += '(';
      print_strict(t.left(), out);
      out += " * ";
      print_strict(t.right(), out);
      out += ')';
      return;
    case TermKind::Under:
      out += 'E' + std::to_string(t.functor()) + '[';
      print_strict(t.body(), out);
      out += ']';
      return;
    default: {
      Head h = t.head();
      out += kind_name(h.kind);
      if (has_functor_index(h.kind)) out += std::to_string(h.functor);
      auto idx = h.indices();
      if (idx.empty()) return;
      out += '{';
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) out += ',';
        print_strict_formula(idx[k], out);
      }
      out += '}';
    }
  }
}

bool is_structural(TermKind k) {
  switch (k) {
    case TermKind::Assoc:
    case TermKind::AssocInv:
    case TermKind::LUnit:
    case TermKind::LUnitInv:
    case TermKind::RUnit:
    case TermKind::RUnitInv:
      return true;
    default:
      return false;
  }
}

}  // namespace

StrictFormula StrictFormula::from_atoms(const std::vector<Formula>& atoms) {
  std::vector<Formula> checked;
  for (Formula a : atoms) collect_atoms(a, checked);
  return StrictFormula(embed_atoms(checked));
}

std::vector<Formula> StrictFormula::atoms() const {
  std::vector<Formula> out;
  collect_atoms(embedded_, out);
  return out;
}

StrictFormula operator+(const StrictFormula& a, const StrictFormula& b) {
  std::vector<Formula> atoms = a.atoms();
  for (Formula x : b.atoms()) atoms.push_back(x);
  return StrictFormula(embed_atoms(atoms));
}

StrictFormula strictify_formula(Formula a) {
  std::vector<Formula> atoms;
  collect_atoms(a, atoms);
  return StrictFormula(embed_atoms(atoms));
}

Formula embed_formula(const StrictFormula& s) { return s.embedded(); }

StrictFormula strict_app(unsigned i, const StrictFormula& body) {
  return StrictFormula::from_atoms({E(i, body.embedded())});
}

std::string to_string(const StrictFormula& s) {
  std::string out;
  print_atoms(s.atoms(), out);
  return out;
}

std::pair<StrictFormula, StrictFormula> strict_boundary(const Head& h) {
  auto x = [&](std::size_t k) { return strict_index(h.args[k]); };
  const unsigned i = h.functor;
  switch (h.kind) {
    case TermKind::Id: return {x(0), x(0)};
    case TermKind::Sym: return {x(0) + x(1), x(1) + x(0)};
    case TermKind::Psi: return {strict_app(i, x(0)) + strict_app(i, x(1)), strict_app(i, x(0) + x(1))};
    case TermKind::Psi0: return {StrictFormula(), strict_app(i, StrictFormula())};
    case TermKind::PsiL: return {strict_app(i, x(0)) + x(1), strict_app(i, x(0) + x(1))};
    case TermKind::PsiR: return {x(0) + strict_app(i, x(1)), strict_app(i, x(0) + x(1))};
    case TermKind::Diag: return {x(0), x(0) + x(0)};
    case TermKind::Codiag: return {x(0) + x(0), x(0)};
    case TermKind::ToTerminal: return {x(0), StrictFormula()};
    case TermKind::FromInitial: return {StrictFormula(), x(0)};
    default: break;
  }
  throw Error(ErrorKind::Internal, "no strict boundary for " + std::string(kind_name(h.kind)));
}

StrictTerm StrictTerm::leaf(const Head& h) {
  if (is_structural(h.kind) || !(is_head(h.kind) || h.kind == TermKind::Id))
    throw Error(ErrorKind::Internal, "not a strict head: " + std::string(kind_name(h.kind)));
  Head s = h;
  for (std::size_t k = 0; k < leaf_arity(h.kind); ++k) s.args[k] = strict_index(h.args[k]).embedded();
  auto [src, tgt] = strict_boundary(s);
  return StrictTerm(ArrowTerm::leaf(s), src, tgt);
}

StrictTerm StrictTerm::id(const StrictFormula& a) { return leaf({TermKind::Id, 0, {a.embedded()}}); }
StrictTerm StrictTerm::sym(const StrictFormula& a, const StrictFormula& b) {
  return leaf({TermKind::Sym, 0, {a.embedded(), b.embedded()}});
}
StrictTerm StrictTerm::psi(unsigned i, const StrictFormula& a, const StrictFormula& b) {
  return leaf({TermKind::Psi, i, {a.embedded(), b.embedded()}});
}
StrictTerm StrictTerm::psi0(unsigned i) { return leaf({TermKind::Psi0, i, {}}); }

StrictTerm StrictTerm::comp(const StrictTerm& g, const StrictTerm& f) {
  if (f.target_ != g.source_)
    throw Error(ErrorKind::IllTyped, "strict composition mismatch: " + to_string(f.target_) +
                                         " is not " + to_string(g.source_),
                g.term_.source_pos());
  return StrictTerm(ArrowTerm::comp(g.term_, f.term_), f.source_, g.target_);
}

StrictTerm StrictTerm::ten(const StrictTerm& f, const StrictTerm& g) {
  return StrictTerm(ArrowTerm::ten(f.term_, g.term_), f.source_ + g.source_, f.target_ + g.target_);
}

StrictTerm StrictTerm::under(unsigned i, const StrictTerm& f) {
  return StrictTerm(ArrowTerm::under(i, f.term_), strict_app(i, f.source_),
                    strict_app(i, f.target_));
}

StrictTerm strictify_term(const ArrowTerm& t) {
  switch (t.kind()) {
    case TermKind::Comp:
      return StrictTerm::comp(strictify_term(t.outer()), strictify_term(t.inner()));
    case TermKind::Ten:
      return StrictTerm::ten(strictify_term(t.left()), strictify_term(t.right()));
    case TermKind::Under:
      return StrictTerm::under(t.functor(), strictify_term(t.body()));
    default:
      break;
  }
  Head h = t.head();
  if (is_structural(h.kind)) return StrictTerm::id(strictify_formula(head_boundary(h).first));
  return StrictTerm::leaf(h);
}

StrictTerm as_strict(const ArrowTerm& t) {
  switch (t.kind()) {
    case TermKind::Comp:
      return StrictTerm::comp(as_strict(t.outer()), as_strict(t.inner()));
    case TermKind::Ten:
      return StrictTerm::ten(as_strict(t.left()), as_strict(t.right()));
    case TermKind::Under:
      return StrictTerm::under(t.functor(), as_strict(t.body()));
    default:
      break;
  }
  Head h = t.head();
  if (is_structural(h.kind))
    throw Error(ErrorKind::IllTyped, "strict terms have no " + std::string(kind_name(h.kind)),
                t.source_pos());
  return StrictTerm::leaf(h);
}

std::string to_string(const StrictTerm& t) {
  std::string out;
  print_strict(t.term(), out);
  return out;
}

Graph graph_of(const StrictTerm& t, CountingMode mode) { return graph_of_unchecked(t.term(), mode); }

ArrowTerm invert_iso(const ArrowTerm& t) {
  switch (t.kind()) {
    case TermKind::Comp: return T::comp(invert_iso(t.inner()), invert_iso(t.outer()));
    case TermKind::Ten: return T::ten(invert_iso(t.left()), invert_iso(t.right()));
    case TermKind::Under: return T::under(t.functor(), invert_iso(t.body()));
    case TermKind::Id: return t;
    case TermKind::Assoc: return T::assoc_inv(t.index(0), t.index(1), t.index(2));
    case TermKind::AssocInv: return T::assoc(t.index(0), t.index(1), t.index(2));
    case TermKind::LUnit: return T::lunit_inv(t.index(0));
    case TermKind::LUnitInv: return T::lunit(t.index(0));
    case TermKind::RUnit: return T::runit_inv(t.index(0));
    case TermKind::RUnitInv: return T::runit(t.index(0));
    case TermKind::Sym: return T::sym(t.index(1), t.index(0));
    default: break;
  }
  throw Error(ErrorKind::Internal, "not an isomorphism: " + to_string(t));
}

ArrowTerm canonical_iso(Formula a, Formula b) {
  if (a == b) return T::id(a);
  if (strictify_formula(a) != strictify_formula(b))
    throw Error(ErrorKind::NoArrow, "no canonical arrow " + to_string(a) + " -> " + to_string(b));
  return cs(invert_iso(normalize_bracketing(b)), normalize_bracketing(a));
}

ArrowTerm glue(const ArrowTerm& g, const ArrowTerm& f) {
  Formula mid_f = source_target(f).target;
  Formula mid_g = source_target(g).source;
  if (mid_f == mid_g) return T::comp(g, f);
  return T::comp(g, T::comp(canonical_iso(mid_f, mid_g), f));
}

ArrowTerm frame(const ArrowTerm& t, Formula s, Formula g) {
  TypePair tp = source_target(t);
  return cs(canonical_iso(tp.target, g), cs(t, canonical_iso(s, tp.source)));
}

ArrowTerm lift_strict(const StrictTerm& st) {
  const ArrowTerm& t = st.term();
  switch (t.kind()) {
    case TermKind::Comp:
      return T::comp(lift_strict(as_strict(t.outer())), lift_strict(as_strict(t.inner())));
    case TermKind::Under:
      return T::under(t.functor(), lift_strict(as_strict(t.body())));
    case TermKind::Ten:
      return frame(T::ten(lift_strict(as_strict(t.left())), lift_strict(as_strict(t.right()))),
                   st.source().embedded(), st.target().embedded());
    default:
      return frame(t, st.source().embedded(), st.target().embedded());
  }
}

}  // namespace cohere
