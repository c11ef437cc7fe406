#include "cohere/text.hpp"

#include <cctype>
#include <vector>

#include "cohere/error.hpp"

namespace cohere {

namespace {

constexpr std::string_view kTensorGlyph = "\xE2\x8A\x97";   // ⊗
constexpr std::string_view kComposeGlyph = "\xE2\x88\x98";  // ∘

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula whole_formula() {
    Formula f = formula_top();
    expect_end();
    return f;
  }

  ArrowTerm whole_term() {
    ArrowTerm t = term();
    expect_end();
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(at), at);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }

  bool eat_star() { return eat("*") || eat(kTensorGlyph); }
  bool eat_dot() { return eat(".") || eat(kComposeGlyph); }

  std::string_view peek_ident() {
    skip();
    std::size_t end = pos_;
    if (end < text_.size() && ident_start(text_[end])) {
      while (end < text_.size() && ident_char(text_[end])) ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  static bool digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  }

  unsigned index_of(std::string_view s, std::size_t at) const {
    if (!digits(s) || s.size() > 9) fail("bad functor index '" + std::string(s) + "'", at);
    return static_cast<unsigned>(std::stoul(std::string(s)));
  }

  /// `E`, `E1`, `E12` as a functor name; nullopt-like -1 otherwise.
  static bool functor_name(std::string_view id) {
    return !id.empty() && id[0] == 'E' && (id.size() == 1 || digits(id.substr(1)));
  }

  unsigned functor_index(std::string_view id, std::size_t at) const {
    return id.size() == 1 ? 1u : index_of(id.substr(1), at);
  }

  // ---- formulae

  Formula formula_top() {
    Formula f = formula_unary();
    if (eat_star()) {
      Formula g = formula_unary();
      skip();
      std::size_t at = pos_;
      if (eat_star()) fail("ambiguous chain of '*'; add parentheses", at);
      f = f * g;
    }
    return f;
  }

  Formula formula_unary() {
    skip();
    std::size_t at = pos_;
    if (eat("(")) {
      Formula f = formula_unary();
      if (eat(")")) return f;
      if (!eat_star()) fail("expected '*' or ')'");
      Formula g = formula_unary();
      if (eat_star()) fail("ambiguous chain of '*'; add parentheses", at);
      expect(")");
      return f * g;
    }
    if (eat("[")) return strict_list_rest();
    std::string_view id = peek_ident();
    if (id.empty()) fail(at_end() ? "unexpected end of input" : "expected a formula");
    pos_ += id.size();
    if (id == "I") return Formula::unit();
    if (functor_name(id)) {
      unsigned i = functor_index(id, at);
      return E(i, formula_unary());
    }
    return Formula::letter(id);
  }

  // After '['. Atoms are letters or E<i>[...].
  Formula strict_list_rest() {
    std::vector<Formula> atoms;
    if (!eat("]")) {
      do {
        skip();
        std::size_t at = pos_;
        std::string_view id = peek_ident();
        if (id.empty() || id == "I") fail("expected a strict atom", at);
        pos_ += id.size();
        if (functor_name(id)) {
          unsigned i = functor_index(id, at);
          expect("[");
          atoms.push_back(E(i, strict_list_rest()));
        } else {
          atoms.push_back(Formula::letter(id));
        }
      } while (eat(","));
      expect("]");
    }
    Formula out = Formula::unit();
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it)
      out = it == atoms.rbegin() ? *it : *it * out;
    return out;
  }

  // ---- terms

  ArrowTerm term() {
    skip();
    std::size_t at = pos_;
    ArrowTerm f = tensor_term();
    if (eat_dot()) {
      ArrowTerm rest = term();
      return ArrowTerm::comp(f, rest).with_source_pos(at);
    }
    return f;
  }

  ArrowTerm tensor_term() {
    skip();
    std::size_t at = pos_;
    ArrowTerm f = unary_term();
    if (eat_star()) {
      ArrowTerm g = unary_term();
      skip();
      std::size_t chain = pos_;
      if (eat_star()) fail("ambiguous chain of '*'; add parentheses", chain);
      return ArrowTerm::ten(f, g).with_source_pos(at);
    }
    return f;
  }

  std::vector<Formula> brace_args(std::size_t n) {
    expect("{");
    std::vector<Formula> out;
    for (std::size_t k = 0; k < n; ++k) {
      if (k) expect(",");
      out.push_back(formula_top());
    }
    expect("}");
    return out;
  }

  ArrowTerm unary_term() {
    skip();
    std::size_t at = pos_;
    if (eat("(")) {
      ArrowTerm t = term();
      expect(")");
      return t;
    }
    std::string_view id = peek_ident();
    if (id.empty()) fail(at_end() ? "unexpected end of input" : "expected an arrow term");
    pos_ += id.size();
    if (functor_name(id)) {
      unsigned i = functor_index(id, at);
      expect("[");
      ArrowTerm body = term();
      expect("]");
      return ArrowTerm::under(i, body).with_source_pos(at);
    }
    return head(id, at).with_source_pos(at);
  }

  ArrowTerm head(std::string_view id, std::size_t at) {
    if (id == "id") return ArrowTerm::id(brace_args(1)[0]);
    if (id == "a") {
      auto x = brace_args(3);
      return ArrowTerm::assoc(x[0], x[1], x[2]);
    }
    if (id == "a'") {
      auto x = brace_args(3);
      return ArrowTerm::assoc_inv(x[0], x[1], x[2]);
    }
    if (id == "l") return ArrowTerm::lunit(brace_args(1)[0]);
    if (id == "l'") return ArrowTerm::lunit_inv(brace_args(1)[0]);
    if (id == "r") return ArrowTerm::runit(brace_args(1)[0]);
    if (id == "r'") return ArrowTerm::runit_inv(brace_args(1)[0]);
    if (id == "c") {
      auto x = brace_args(2);
      return ArrowTerm::sym(x[0], x[1]);
    }
    if (id == "delta") return ArrowTerm::diag(brace_args(1)[0]);
    if (id == "nabla") return ArrowTerm::codiag(brace_args(1)[0]);
    if (id == "bang") return ArrowTerm::from_initial(brace_args(1)[0]);
    if (id == "cobang") return ArrowTerm::to_terminal(brace_args(1)[0]);
    if (id.substr(0, 3) == "psi") {
      std::string_view rest = id.substr(3);
      if (!rest.empty() && (rest[0] == 'L' || rest[0] == 'R')) {
        bool left = rest[0] == 'L';
        unsigned i = index_of(rest.substr(1), at);
        auto x = brace_args(2);
        return left ? ArrowTerm::psi_l(i, x[0], x[1]) : ArrowTerm::psi_r(i, x[0], x[1]);
      }
      if (rest.size() >= 2 && rest[0] == '0') return ArrowTerm::psi0(index_of(rest.substr(1), at));
      unsigned i = index_of(rest, at);
      auto x = brace_args(2);
      return ArrowTerm::psi(i, x[0], x[1]);
    }
    fail("unknown head '" + std::string(id) + "'", at);
  }
};

void print(Formula a, std::string& out) {
  switch (a.kind()) {
    case FormulaKind::Unit: out += 'I'; return;
    case FormulaKind::Letter: out += a.name(); return;
    case FormulaKind::App:
      out += 'E';
      out += std::to_string(a.functor());
      out += ' ';
      print(a.body(), out);
      return;
    case FormulaKind::Tensor:
      out += '(';
      print(a.left(), out);
      out += " * ";
      print(a.right(), out);
      out += ')';
      return;
  }
}

void print(const ArrowTerm& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Comp:
      out += '(';
      print(t.outer(), out);
      out += " . ";
      print(t.inner(), out);
      out += ')';
      return;
    case TermKind::Ten:
      out += '(';
      print(t.left(), out);
      out += " * ";
      print(t.right(), out);
      out += ')';
      return;
    case TermKind::Under:
      out += 'E';
      out += std::to_string(t.functor());
      out += '[';
      print(t.body(), out);
      out += ']';
      return;
    default:
      out += to_string(t.head());
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).whole_formula(); }

ArrowTerm parse_term(std::string_view text) { return Parser(text).whole_term(); }

std::string to_string(Formula a) {
  std::string out;
  print(a, out);
  return out;
}

std::string to_string(const ArrowTerm& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Head& h) {
  std::string out(kind_name(h.kind));
  if (has_functor_index(h.kind)) out += std::to_string(h.functor);
  auto idx = h.indices();
  if (idx.empty()) return out;
  out += '{';
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ',';
    out += to_string(idx[k]);
  }
  out += '}';
  return out;
}

}  // namespace cohere
