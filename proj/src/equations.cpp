#include "cohere/equations.hpp"

#include <array>
#include <initializer_list>
#include <mutex>
#include <set>

#include "cohere/builders.hpp"
#include "cohere/error.hpp"
#include "cohere/strict.hpp"
#include "cohere/text.hpp"
#include "cohere/typing.hpp"

namespace cohere {

namespace {

using T = ArrowTerm;

Formula mv(const char* name) { return Formula::letter(name); }
Formula Ef(Formula x) { return E(1, x); }
T id(Formula x) { return T::id(x); }
T t(const T& f, const T& g) { return T::ten(f, g); }
T under(const T& f) { return T::under(1, f); }

/// g_n ∘ … ∘ g_1, listed outermost first, glued up to strictification.
T seq(std::initializer_list<T> outer_first) {
  std::vector<T> fs(outer_first);
  T out = fs.back();
  for (std::size_t k = fs.size() - 1; k-- > 0;) out = glue(fs[k], out);
  return out;
}

enum class Variant { Plain, L, R };

T psi_v(Variant v, Formula a1, Formula a2) {
  switch (v) {
    case Variant::L: return T::psi_l(1, a1, a2);
    case Variant::R: return T::psi_r(1, a1, a2);
    default: return T::psi(1, a1, a2);
  }
}
Formula x1(Variant v, Formula a1) { return v == Variant::R ? a1 : Ef(a1); }
Formula x2(Variant v, Formula a2) { return v == Variant::L ? a2 : Ef(a2); }

// Ψ_{A1,A2;B}: X1 ⊗ B ⊗ X2 → E(A1⊗A2) ⊗ B
T big_psi(Variant v, Formula a1, Formula a2, Formula b) {
  return seq({t(psi_v(v, a1, a2), id(b)), t(id(x1(v, a1)), T::sym(b, x2(v, a2)))});
}

bool mentions_functor(const T& t) {
  switch (t.kind()) {
    case TermKind::Comp:
    case TermKind::Ten:
      return mentions_functor(t.left()) || mentions_functor(t.right());
    case TermKind::Under:
      return true;
    default:
      if (has_functor_index(t.kind())) return true;
      for (Formula f : t.indices())
        if (f.functor_count() > 0) return true;
      return false;
  }
}

std::string sup(Variant v) { return v == Variant::L ? "ᴸ" : v == Variant::R ? "ᴿ" : ""; }

class Table {
 public:
  explicit Table(const Theory& th) : th_(th) {}

  std::vector<EquationScheme> build() {
    const bool unit = th_.unit_allowed;
    const bool d = th_.tag == TheoryTag::D;
    monoidal(unit);
    if (th_.allows(TermKind::Psi)) psi_equations(unit && th_.allows(TermKind::Psi0), false);
    if (d) psi_equations(true, true);
    if (th_.allows(TermKind::PsiL)) left_equations();
    if (th_.allows(TermKind::PsiR)) right_equations();
    if (th_.allows(TermKind::PsiL) && th_.allows(TermKind::PsiR)) local_equation();
    if (th_.allows(TermKind::Sym)) symmetric(unit);
    if (th_.allows(TermKind::Sym) && (th_.allows(TermKind::Psi) || d)) linear(d);
    if (th_.allows(TermKind::Sym) && th_.allows(TermKind::PsiL)) locally_linear();
    if (th_.allows(TermKind::Diag)) relevant(unit, th_.allows(TermKind::Psi));
    if (th_.allows(TermKind::ToTerminal)) cartesian();
    if (th_.allows(TermKind::Codiag)) cocartesian();
    return std::move(out_);
  }

 private:
  const Theory& th_;
  std::vector<EquationScheme> out_;

  void add(std::string tag, std::vector<std::string> vars, T lhs, T rhs) {
    TypePair l = source_target(lhs);
    rhs = frame(rhs, l.source, l.target);
    bool functor = mentions_functor(lhs) || mentions_functor(rhs);
    out_.push_back({std::move(tag), std::move(vars), std::move(lhs), std::move(rhs), functor});
  }

  T psi(Formula a, Formula b, bool derived) {
    return derived ? derived_psi(1, a, b) : T::psi(1, a, b);
  }
  T psi0(bool derived) { return derived ? derived_psi0(1) : T::psi0(1); }

  void monoidal(bool unit) {
    Formula A = mv("A"), B = mv("B"), C = mv("C"), D = mv("D"), I = Formula::unit();
    add("(pentagon)", {"A", "B", "C", "D"},
        seq({T::assoc(A, B, C * D), T::assoc(A * B, C, D)}),
        seq({t(id(A), T::assoc(B, C, D)), T::assoc(A, B * C, D), t(T::assoc(A, B, C), id(D))}));
    add("(a iso)", {"A", "B", "C"}, seq({T::assoc_inv(A, B, C), T::assoc(A, B, C)}),
        id((A * B) * C));
    add("(a' iso)", {"A", "B", "C"}, seq({T::assoc(A, B, C), T::assoc_inv(A, B, C)}),
        id(A * (B * C)));
    if (!unit) return;
    add("(triangle)", {"A", "B"}, seq({t(id(A), T::lunit(B)), T::assoc(A, I, B)}),
        t(T::runit(A), id(B)));
    add("(a l)", {"A", "B"}, seq({T::lunit(A * B), T::assoc(I, A, B)}), t(T::lunit(A), id(B)));
    add("(a r)", {"A", "B"}, seq({t(id(A), T::runit(B)), T::assoc(A, B, I)}), T::runit(A * B));
    add("(l r)", {}, T::lunit(I), T::runit(I));
    add("(l iso)", {"A"}, seq({T::lunit_inv(A), T::lunit(A)}), id(I * A));
    add("(l' iso)", {"A"}, seq({T::lunit(A), T::lunit_inv(A)}), id(A));
    add("(r iso)", {"A"}, seq({T::runit_inv(A), T::runit(A)}), id(A * I));
    add("(r' iso)", {"A"}, seq({T::runit(A), T::runit_inv(A)}), id(A));
  }

  void psi_equations(bool with_unit, bool derived) {
    Formula A = mv("A"), B = mv("B"), C = mv("C"), I = Formula::unit();
    add("(ψa)", {"A", "B", "C"},
        seq({under(T::assoc(A, B, C)), psi(A * B, C, derived), t(psi(A, B, derived), id(Ef(C)))}),
        seq({psi(A, B * C, derived), t(id(Ef(A)), psi(B, C, derived)),
             T::assoc(Ef(A), Ef(B), Ef(C))}));
    if (!with_unit) return;
    add("(ψl)", {"A"},
        seq({under(T::lunit(A)), psi(I, A, derived), t(psi0(derived), id(Ef(A)))}),
        T::lunit(Ef(A)));
    add("(ψr)", {"A"},
        seq({under(T::runit(A)), psi(A, I, derived), t(id(Ef(A)), psi0(derived))}),
        T::runit(Ef(A)));
  }

  void left_equations() {
    Formula A = mv("A"), B = mv("B"), C = mv("C"), I = Formula::unit();
    add("(ψᴸa)", {"A", "B", "C"},
        seq({under(T::assoc(A, B, C)), T::psi_l(1, A * B, C), t(T::psi_l(1, A, B), id(C))}),
        seq({T::psi_l(1, A, B * C), T::assoc(Ef(A), B, C)}));
    add("(ψᴸr)", {"A"}, seq({under(T::runit(A)), T::psi_l(1, A, I)}), T::runit(Ef(A)));
  }

  void right_equations() {
    Formula A = mv("A"), B = mv("B"), C = mv("C"), I = Formula::unit();
    add("(ψᴿa)", {"A", "B", "C"}, seq({under(T::assoc(A, B, C)), T::psi_r(1, A * B, C)}),
        seq({T::psi_r(1, A, B * C), t(id(A), T::psi_r(1, B, C)), T::assoc(A, B, Ef(C))}));
    add("(ψᴿl)", {"A"}, seq({under(T::lunit(A)), T::psi_r(1, I, A)}), T::lunit(Ef(A)));
  }

  void local_equation() {
    Formula A = mv("A"), B = mv("B"), C = mv("C");
    add("(ψᴸψᴿa)", {"A", "B", "C"},
        seq({under(T::assoc(A, B, C)), T::psi_l(1, A * B, C), t(T::psi_r(1, A, B), id(C))}),
        seq({T::psi_r(1, A, B * C), t(id(A), T::psi_l(1, B, C)), T::assoc(A, Ef(B), C)}));
  }

  void symmetric(bool unit) {
    Formula A = mv("A"), B = mv("B"), C = mv("C"), I = Formula::unit();
    add("(c c)", {"A", "B"}, seq({T::sym(B, A), T::sym(A, B)}), id(A * B));
    add("(hexagon)", {"A", "B", "C"},
        seq({T::assoc(B, C, A), T::sym(A, B * C), T::assoc(A, B, C)}),
        seq({t(id(B), T::sym(A, C)), T::assoc(B, A, C), t(T::sym(A, B), id(C))}));
    if (unit) add("(c l)", {"A"}, seq({T::lunit(A), T::sym(A, I)}), T::runit(A));
  }

  void linear(bool derived) {
    Formula A = mv("A"), B = mv("B");
    add("(ψc)", {"A", "B"}, seq({under(T::sym(A, B)), psi(A, B, derived)}),
        seq({psi(B, A, derived), T::sym(Ef(A), Ef(B))}));
    if (derived) return;
    Formula A1 = mv("A1"), A2 = mv("A2"), A3 = mv("A3"), B1 = mv("B1"), B2 = mv("B2");
    const Variant P = Variant::Plain;
    add("(ΨΨ1)", {"A1", "A2", "A3", "B1", "B2"},
        seq({t(big_psi(P, A1 * A3, A2, B1), id(B2)), big_psi(P, A1, A3, B1 * (Ef(A2) * B2))}),
        seq({t(under(t(id(A1), T::sym(A2, A3))), id(B1 * B2)), big_psi(P, A1 * A2, A3, B1 * B2),
             t(big_psi(P, A1, A2, B1), id(B2 * Ef(A3)))}));
    add("(ΨΨ2)", {"A1", "A2", "A3", "B1", "B2"},
        seq({t(big_psi(P, A1, A2 * A3, B1), id(B2)), t(id(Ef(A1) * B1), big_psi(P, A2, A3, B2))}),
        seq({big_psi(P, A1 * A2, A3, B1 * B2), t(big_psi(P, A1, A2, B1), id(B2 * Ef(A3)))}));
    psi_c_equations(P);
  }

  void psi_c_equations(Variant v) {
    Formula A1 = mv("A1"), A2 = mv("A2"), B1 = mv("B1"), B2 = mv("B2");
    Formula X1 = x1(v, A1), X2 = x2(v, A2), EA = Ef(A1 * A2);
    std::vector<std::string> vars{"A1", "A2", "B1", "B2"};
    std::string s = sup(v);
    add("(Ψ" + s + "c1)", vars,
        seq({big_psi(v, A1, A2, B1 * B2), t(T::sym(B1, X1), id(B2 * X2))}),
        seq({t(T::sym(B1, EA), id(B2)), t(id(B1), big_psi(v, A1, A2, B2))}));
    add("(Ψ" + s + "c2)", vars,
        seq({t(id(B1), big_psi(v, A1, A2, B2)), t(T::sym(X1, B1), id(B2 * X2))}),
        seq({t(T::sym(EA, B1), id(B2)), big_psi(v, A1, A2, B1 * B2)}));
    add("(Ψ" + s + "c3)", vars,
        seq({t(big_psi(v, A1, A2, B1), id(B2)), t(id(X1 * B1), T::sym(B2, X2))}),
        big_psi(v, A1, A2, B1 * B2));
    add("(Ψ" + s + "c4)", vars,
        seq({big_psi(v, A1, A2, B1 * B2), t(id(X1 * B1), T::sym(X2, B2))}),
        t(big_psi(v, A1, A2, B1), id(B2)));
  }

  void locally_linear() {
    Formula A = mv("A"), B = mv("B");
    add("(ψᴸψᴿc)", {"A", "B"}, seq({under(T::sym(A, B)), T::psi_l(1, A, B)}),
        seq({T::psi_r(1, B, A), T::sym(Ef(A), B)}));
    Formula A1 = mv("A1"), A2 = mv("A2"), A3 = mv("A3"), B1 = mv("B1"), B2 = mv("B2");
    const Variant L = Variant::L, R = Variant::R;
    std::vector<std::string> vars{"A1", "A2", "A3", "B1", "B2"};
    add("(ΨᴸΨᴸ)", vars,
        seq({t(big_psi(L, A1 * A3, A2, B1), id(B2)), big_psi(L, A1, A3, B1 * (A2 * B2))}),
        seq({t(under(t(id(A1), T::sym(A2, A3))), id(B1 * B2)), big_psi(L, A1 * A2, A3, B1 * B2),
             t(big_psi(L, A1, A2, B1), id(B2 * A3))}));
    add("(ΨᴸΨᴿ1)", vars,
        seq({big_psi(L, A1 * A2, A3, B1 * B2), t(big_psi(R, A1, A2, B1), id(B2 * A3))}),
        seq({t(big_psi(R, A1, A2 * A3, B1), id(B2)), t(id(A1 * B1), big_psi(L, A2, A3, B2))}));
    add("(ΨᴸΨᴿ2)", vars,
        seq({t(big_psi(L, A1 * A3, A2, B1), id(B2)), big_psi(R, A1, A3, B1 * (A2 * B2))}),
        seq({t(under(t(id(A1), T::sym(A2, A3))), id(B1 * B2)),
             t(big_psi(R, A1, A2 * A3, B1), id(B2)), t(id(A1 * B1), big_psi(R, A2, A3, B2))}));
    psi_c_equations(L);
    psi_c_equations(R);
  }

  void relevant(bool unit, bool with_psi) {
    Formula A = mv("A"), B = mv("B"), I = Formula::unit();
    add("(Δa)", {"A"}, seq({T::assoc(A, A, A), t(T::diag(A), id(A)), T::diag(A)}),
        seq({t(id(A), T::diag(A)), T::diag(A)}));
    if (unit) add("(Δl)", {}, seq({T::lunit(I), T::diag(I)}), id(I));
    add("(Δc)", {"A"}, seq({T::sym(A, A), T::diag(A)}), T::diag(A));
    add("(Δac)", {"A", "B"}, T::diag(A * B), seq({medial(A, A, B, B), t(T::diag(A), T::diag(B))}));
    if (with_psi)
      add("(ψΔ)", {"A"}, under(T::diag(A)), seq({T::psi(1, A, A), T::diag(Ef(A))}));
  }

  void cartesian() {
    Formula A = mv("A"), B = mv("B"), I = Formula::unit();
    T left = under(seq({T::runit(A), t(id(A), T::to_terminal(B))}));
    T right = under(seq({T::lunit(B), t(T::to_terminal(A), id(B))}));
    add("(ext)", {"A", "B"}, seq({T::psi(1, A, B), t(left, right), T::diag(Ef(A * B))}),
        id(Ef(A * B)));
    add("(¡I)", {}, T::to_terminal(I), id(I));
  }

  void cocartesian() {
    Formula A = mv("A"), B = mv("B"), I = Formula::unit();
    add("(∇a)", {"A"}, seq({T::codiag(A), t(T::codiag(A), id(A)), T::assoc_inv(A, A, A)}),
        seq({T::codiag(A), t(id(A), T::codiag(A))}));
    add("(∇l)", {}, seq({T::codiag(I), T::lunit_inv(I)}), id(I));
    add("(∇c)", {"A"}, seq({T::codiag(A), T::sym(A, A)}), T::codiag(A));
    add("(∇ac)", {"A", "B"}, T::codiag(A * B),
        seq({t(T::codiag(A), T::codiag(B)), medial(A, B, A, B)}));
    add("(ψ∇)", {"A"}, seq({under(T::codiag(A)), derived_psi(1, A, A)}), T::codiag(Ef(A)));
    add("(ψ!)", {"A"}, seq({under(T::from_initial(A)), derived_psi0(1)}),
        T::from_initial(Ef(A)));
    add("(!I)", {}, T::from_initial(I), id(I));
  }
};

}  // namespace

Formula rename_functor(Formula f, unsigned from, unsigned to) {
  switch (f.kind()) {
    case FormulaKind::Unit:
    case FormulaKind::Letter:
      return f;
    case FormulaKind::Tensor:
      return rename_functor(f.left(), from, to) * rename_functor(f.right(), from, to);
    case FormulaKind::App:
      return E(f.functor() == from ? to : f.functor(), rename_functor(f.body(), from, to));
  }
  return f;
}

ArrowTerm rename_functor(const ArrowTerm& t, unsigned from, unsigned to) {
  switch (t.kind()) {
    case TermKind::Comp:
      return T::comp(rename_functor(t.outer(), from, to), rename_functor(t.inner(), from, to));
    case TermKind::Ten:
      return T::ten(rename_functor(t.left(), from, to), rename_functor(t.right(), from, to));
    case TermKind::Under:
      return T::under(t.functor() == from ? to : t.functor(), rename_functor(t.body(), from, to));
    default: {
      Head h = t.head();
      if (has_functor_index(h.kind) && h.functor == from) h.functor = to;
      for (std::size_t k = 0; k < leaf_arity(h.kind); ++k)
        h.args[k] = rename_functor(h.args[k], from, to);
      return T::leaf(h);
    }
  }
}

std::pair<ArrowTerm, ArrowTerm> instantiate(const EquationScheme& eq, const Instantiation& args,
                                            unsigned functor) {
  auto lookup = [&](const std::string& name, Formula& out) {
    auto it = args.find(name);
    if (it == args.end()) return false;
    out = it->second;
    return true;
  };
  T l = eq.lhs, r = eq.rhs;
  if (functor != 1) {
    l = rename_functor(l, 1, functor);
    r = rename_functor(r, 1, functor);
  }
  return {substitute(l, lookup), substitute(r, lookup)};
}

const std::vector<EquationScheme>& equations_for(const Theory& th) {
  static std::mutex mutex;
  static std::array<std::vector<EquationScheme>, 12> cache;
  static std::array<bool, 12> ready{};
  std::lock_guard lock(mutex);
  auto k = static_cast<std::size_t>(th.tag);
  if (!ready[k]) {
    cache[k] = Table(th).build();
    ready[k] = true;
  }
  return cache[k];
}

std::vector<std::string> all_equation_tags() {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const Theory& th : all_theories())
    for (const EquationScheme& e : equations_for(th))
      if (seen.insert(e.tag).second) out.push_back(e.tag);
  return out;
}

}  // namespace cohere
