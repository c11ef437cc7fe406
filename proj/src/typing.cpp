#include "cohere/typing.hpp"

#include <map>

#include "cohere/error.hpp"
#include "cohere/text.hpp"

namespace cohere {

namespace {

void check_formula(Formula a, const Theory* th, std::size_t pos) {
  if (!th) return;
  if (!th->unit_allowed && a.unit_count() > 0)
    throw Error(ErrorKind::UnitForbidden,
                "the unit I is not an object of " + std::string(th->name) + ": " + to_string(a), pos);
  if (!th->functors_allowed && a.functor_count() > 0)
    throw Error(ErrorKind::HeadNotInTheory,
                std::string(th->name) + " has no endofunctors: " + to_string(a), pos);
}

TypePair type_of(const ArrowTerm& t, const Theory* th) {
  const std::size_t pos = t.source_pos();
  switch (t.kind()) {
    case TermKind::Comp: {
      TypePair f = type_of(t.inner(), th);
      TypePair g = type_of(t.outer(), th);
      if (f.target != g.source)
        throw Error(ErrorKind::IllTyped,
                    "composition mismatch: " + to_string(f.target) + " is not " + to_string(g.source),
                    pos);
      return {f.source, g.target};
    }
    case TermKind::Ten: {
      TypePair f = type_of(t.left(), th);
      TypePair g = type_of(t.right(), th);
      return {f.source * g.source, f.target * g.target};
    }
    case TermKind::Under: {
      if (th && !th->functors_allowed)
        throw Error(ErrorKind::HeadNotInTheory,
                    std::string(th->name) + " has no endofunctors", pos);
      TypePair f = type_of(t.body(), th);
      return {E(t.functor(), f.source), E(t.functor(), f.target)};
    }
    default:
      break;
  }
  if (th && t.kind() != TermKind::Id && !th->allows(t.kind()))
    throw Error(ErrorKind::HeadNotInTheory,
                "head " + std::string(kind_name(t.kind())) + " is not in " + std::string(th->name),
                pos);
  auto [s, g] = head_boundary(t.head());
  check_formula(s, th, pos);
  check_formula(g, th, pos);
  return {s, g};
}

void walk(Formula a, Path& path, std::vector<Occurrence>& out) {
  switch (a.kind()) {
    case FormulaKind::Unit:
      return;
    case FormulaKind::Letter:
      out.push_back({path, false, 0, a.name()});
      return;
    case FormulaKind::App:
      out.push_back({path, true, a.functor(), {}});
      path.push_back(Step::Body);
      walk(a.body(), path, out);
      path.pop_back();
      return;
    case FormulaKind::Tensor:
      path.push_back(Step::Left);
      walk(a.left(), path, out);
      path.back() = Step::Right;
      walk(a.right(), path, out);
      path.pop_back();
      return;
  }
}

}  // namespace

void validate_formula(Formula a, const Theory& th, std::size_t pos) { check_formula(a, &th, pos); }

TypePair source_target(const ArrowTerm& t, const Theory& th) { return type_of(t, &th); }

TypePair source_target(const ArrowTerm& t) { return type_of(t, nullptr); }

std::size_t count_occurrences(Formula a, CountingMode mode) {
  return a.functor_count() + (mode == CountingMode::AllGenerators ? a.letter_count() : 0);
}

std::vector<Occurrence> generator_occurrences(Formula a) {
  std::vector<Occurrence> out;
  Path path;
  walk(a, path, out);
  return out;
}

std::set<std::size_t> scope_of(Formula b, std::size_t occ) {
  auto occs = generator_occurrences(b);
  if (occ >= occs.size() || !occs[occ].is_functor)
    throw Error(ErrorKind::BadOccurrence,
                "occurrence " + std::to_string(occ) + " is not a functor occurrence of " + to_string(b));
  Path body = occs[occ].path;
  body.push_back(Step::Body);
  std::set<std::size_t> out;
  for (std::size_t k = occ + 1; k < occs.size() && is_prefix(body, occs[k].path); ++k) out.insert(k);
  return out;
}

bool is_diversified(Formula a, DiversityMode mode) {
  std::map<std::string, int> letters;
  std::map<unsigned, int> functors;
  for (const Occurrence& o : generator_occurrences(a)) {
    if (o.is_functor) {
      if (mode != DiversityMode::Objects && ++functors[o.functor] > 1) return false;
    } else if (mode != DiversityMode::Functors && ++letters[o.name] > 1) {
      return false;
    }
  }
  return true;
}

}  // namespace cohere
