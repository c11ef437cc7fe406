#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cohere/decide.hpp"
#include "cohere/error.hpp"
#include "cohere/normalize.hpp"
#include "cohere/oracle.hpp"
#include "cohere/strict.hpp"
#include "cohere/text.hpp"
#include "cohere/typing.hpp"

using namespace cohere;
using json = nlohmann::ordered_json;

namespace {

constexpr int kEqual = 0, kNotEqual = 1, kTypeMismatch = 2;
constexpr int kUsage = 64, kDataError = 65, kBudget = 70;

struct Options {
  std::string theory = "M";
  std::string format = "text";
  std::size_t size_bound = 3;
  std::size_t step_bound = 100000;
  std::size_t budget = 0;
  std::size_t atoms = 2;
  std::size_t functors = 2;
  std::vector<std::string> inputs;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool color() {
  const char* v = std::getenv("COHERE_COLOR");
  return v && std::string(v) == "1";
}

std::string paint(const std::string& s, const char* code) {
  return color() ? std::string("\x1b[") + code + "m" + s + "\x1b[0m" : s;
}

// A path names a file of inputs, one per line, with `#` comments.
std::vector<std::string> expand(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(a, ec)) {
      out.push_back(a);
      continue;
    }
    std::ifstream in(a);
    std::string line;
    while (std::getline(in, line)) {
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = line.find_last_not_of(" \t\r");
      out.push_back(line.substr(b, e - b + 1));
    }
  }
  return out;
}

const Theory& theory_of(const Options& o) {
  auto tag = parse_theory_tag(o.theory);
  if (!tag) throw Usage("unknown theory '" + o.theory + "'");
  return theory(*tag);
}

void want_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw Usage("format '" + o.format + "' is not available for this command");
}

void arity(const std::vector<std::string>& in, std::size_t group) {
  if (in.empty() || in.size() % group != 0)
    throw Usage("expected " + std::string(group == 1 ? "one input" : "inputs in pairs") +
                ", got " + std::to_string(in.size()));
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int cmd_parse(const Options& o) {
  want_format(o, {"text", "json"});
  arity(o.inputs, 1);
  for (const auto& s : o.inputs) {
    std::string kind, text;
    try {
      text = to_string(parse_term(s));
      kind = "term";
    } catch (const Error& term_error) {
      try {
        text = to_string(parse_formula(s));
        kind = "formula";
      } catch (const Error&) {
        throw term_error;
      }
    }
    if (o.format == "json")
      emit({{"kind", kind}, {"text", text}});
    else
      std::cout << text << "\n";
  }
  return 0;
}

int cmd_type(const Options& o) {
  want_format(o, {"text", "json"});
  arity(o.inputs, 1);
  const Theory& th = theory_of(o);
  for (const auto& s : o.inputs) {
    TypePair tp = source_target(parse_term(s), th);
    if (o.format == "json")
      emit({{"source", to_string(tp.source)}, {"target", to_string(tp.target)}});
    else
      std::cout << to_string(tp.source) << " -> " << to_string(tp.target) << "\n";
  }
  return 0;
}

int cmd_graph(const Options& o) {
  want_format(o, {"text", "json", "dot"});
  arity(o.inputs, 1);
  const Theory& th = theory_of(o);
  for (const auto& s : o.inputs) {
    Graph g = graph_of(parse_term(s), th);
    if (o.format == "json")
      std::cout << to_json(g) << "\n";
    else if (o.format == "dot")
      std::cout << to_dot(g);
    else
      std::cout << to_text(g) << "\n";
  }
  return 0;
}

int cmd_eq(const Options& o) {
  want_format(o, {"text", "json"});
  arity(o.inputs, 2);
  const Theory& th = theory_of(o);
  int status = kEqual;
  for (std::size_t k = 0; k < o.inputs.size(); k += 2) {
    Verdict v = decide_equal(parse_term(o.inputs[k]), parse_term(o.inputs[k + 1]), th);
    int code = v.kind == Verdict::Kind::Equal      ? kEqual
               : v.kind == Verdict::Kind::NotEqual ? kNotEqual
                                                   : kTypeMismatch;
    status = std::max(status, code);
    if (o.format == "json")
      std::cout << to_json(v) << "\n";
    else
      std::cout << paint(to_text(v), code == kEqual ? "32" : "31") << "\n";
  }
  return status;
}

int cmd_nf(const Options& o) {
  want_format(o, {"text", "json"});
  arity(o.inputs, 1);
  const Theory& th = theory_of(o);
  if (th.tag != TheoryTag::M && th.tag != TheoryTag::Mc)
    throw Usage("nf is defined for M and Mc only");
  for (const auto& s : o.inputs) {
    ArrowTerm t = parse_term(s);
    source_target(t, th);
    StrictTerm st = strictify_term(t);
    std::string out;
    if (th.tag == TheoryTag::M) {
      auto nf = normalize_M(st);
      out = o.format == "json" ? to_json(nf) : to_text(nf);
    } else {
      auto nf = normalize_Mc(st);
      out = o.format == "json" ? to_json(nf) : to_text(nf);
    }
    std::cout << out << "\n";
  }
  return 0;
}

int cmd_inhabit(const Options& o) {
  want_format(o, {"text", "json"});
  arity(o.inputs, 2);
  const Theory& th = theory_of(o);
  int status = 0;
  for (std::size_t k = 0; k < o.inputs.size(); k += 2) {
    Formula a = parse_formula(o.inputs[k]), b = parse_formula(o.inputs[k + 1]);
    std::optional<ArrowTerm> w;
    std::string method;
    switch (th.tag) {
      case TheoryTag::E:
        w = inhabited_E(a, b);
        method = "canonical-iso";
        break;
      case TheoryTag::Mminus:
        w = inhabited_Mminus(a, b);
        method = "partition";
        break;
      case TheoryTag::Mc:
        w = theoremhood_Mc(a, b);
        method = "theoremhood";
        break;
      default: {
        if (!oracle_supports(th))
          throw Usage("inhabit is available for E, Mminus, M and Mc only");
        auto all = enumerate_arrows(a, b, o.size_bound, th);
        if (!all.empty()) w = all.front();
        method = "enumeration";
      }
    }
    if (!w) status = 1;
    if (o.format == "json") {
      json j{{"inhabited", w.has_value()}, {"method", method}};
      j["witness"] = w ? json(to_string(*w)) : json(nullptr);
      emit(j);
    } else {
      std::cout << (w ? to_string(*w) : paint("NONE", "31")) << "\n";
    }
  }
  return status;
}

int cmd_oracle(const Options& o) {
  want_format(o, {"text", "json"});
  const Theory& th = theory_of(o);
  if (!oracle_supports(th)) throw Usage("the oracle runs for E, Mminus, M and Mc only");
  if (o.inputs.empty()) {
    CoherenceReport r = coherence_report(th, o.atoms, o.size_bound, o.step_bound, o.functors);
    std::cout << (o.format == "json" ? to_json(r) : to_table(r)) << "\n";
    if (r.budget_exhausted) return kBudget;
    return r.soundness_violations == 0 && r.unproved_pairs == 0 ? 0 : 1;
  }
  arity(o.inputs, 2);
  int status = 0;
  for (std::size_t k = 0; k < o.inputs.size(); k += 2) {
    std::size_t bound = o.budget ? std::min(o.budget, o.step_bound) : o.step_bound;
    ClosureResult r = closure_equal(parse_term(o.inputs[k]), parse_term(o.inputs[k + 1]), th, bound);
    if (o.format == "json") {
      json j{{"proved", r.proved}, {"explored", r.explored}};
      j["trace"] = json::parse(to_json(r.trace));
      emit(j);
    } else {
      std::cout << (r.proved ? paint("PROVED EQUAL", "32") : paint("NOT PROVED WITHIN BOUND", "31"))
                << "\n";
      for (const auto& s : r.trace)
        std::cout << "  " << s.eq << (s.left_to_right ? " LR " : " RL ") << to_string(s.result) << "\n";
    }
    if (!r.proved) status = std::max(status, r.explored >= bound ? kBudget : 1);
  }
  return status;
}

void report(const Error& e, const Options& o) {
  std::cerr << paint("error", "31") << ": " << to_string(e.kind()) << ": " << e.what();
  if (e.has_position()) {
    if (std::string(e.what()).find("offset") == std::string::npos)
      std::cerr << " at offset " << e.position();
    std::cerr << "\n";
    // Show the offending input with a caret when the position falls inside one.
    for (const auto& s : o.inputs)
      if (e.position() <= s.size()) {
        std::cerr << "  " << s << "\n  " << std::string(e.position(), ' ') << "^\n";
        break;
      }
  } else {
    std::cerr << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence tools for monoidal endofunctors"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> raw;
  auto add_common = [&](CLI::App* sub, bool bounds) {
    sub->add_option("--theory", o.theory, "E, M, Mminus, LL, LR, L, Mc, Lc, R, Rminus, C, D");
    sub->add_option("--format", o.format, "text, json or dot");
    if (bounds) {
      sub->add_option("--size-bound", o.size_bound, "head occurrences per enumerated term");
      sub->add_option("--step-bound", o.step_bound, "terms explored per closure search");
      sub->add_option("--budget", o.budget, "overall cap on explored terms");
    }
    sub->add_option("inputs", raw, "terms, formulae or files of them");
  };
  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Options&);
    bool bounds;
  };
  const Cmd cmds[] = {
      {"parse", "echo the canonical print of a term or formula", cmd_parse, false},
      {"type", "print source and target", cmd_type, false},
      {"graph", "print the graph of a term", cmd_graph, false},
      {"eq", "decide equality of two terms", cmd_eq, false},
      {"nf", "normal form in M or Mc", cmd_nf, false},
      {"inhabit", "find an arrow between two formulae", cmd_inhabit, true},
      {"oracle", "coherence report, or closure search for a pair", cmd_oracle, true},
  };
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, c.bounds);
    if (std::string(c.name) == "oracle") {
      sub->add_option("--atoms", o.atoms, "atoms per object in the report");
      sub->add_option("--functors", o.functors, "functor applications per object in the report");
    }
    subs.emplace_back(sub, &c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    o.inputs = expand(raw);
    for (auto& [sub, c] : subs)
      if (sub->parsed()) return c->run(o);
  } catch (const Usage& e) {
    std::cerr << paint("usage", "31") << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    report(e, o);
    bool internal = e.kind() == ErrorKind::BudgetExhausted || e.kind() == ErrorKind::Internal;
    return internal ? kBudget : kDataError;
  }
  return kUsage;
}
