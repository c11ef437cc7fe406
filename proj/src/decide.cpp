#include "cohere/decide.hpp"

#include <json.hpp>
#include <map>
#include <set>

#include "cohere/builders.hpp"
#include "cohere/error.hpp"
#include "cohere/normalize.hpp"
#include "cohere/strict.hpp"
#include "cohere/typing.hpp"

namespace cohere {

Verdict decide_equal(const ArrowTerm& f0, const ArrowTerm& g0, const Theory& th) {
  ArrowTerm f = expand_for_theory(f0, th);
  ArrowTerm g = expand_for_theory(g0, th);
  TypePair tf = source_target(f, th);
  TypePair tg = source_target(g, th);
  Verdict v;
  if (tf != tg) {
    v.kind = Verdict::Kind::TypeMismatch;
    v.source_differs = tf.source != tg.source;
    v.target_differs = tf.target != tg.target;
    return v;
  }
  if (th.decision == DecisionMode::Preorder) return v;
  Graph gf = graph_of(f, th);
  Graph gg = graph_of(g, th);
  v.reason = Verdict::Reason::ByGraph;
  if (gf != gg) {
    v.kind = Verdict::Kind::NotEqual;
    v.witness.emplace(gf, gg);
  }
  return v;
}

std::string to_text(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Equal:
      return v.reason == Verdict::Reason::ByGraph ? "EQUAL (graphs agree)" : "EQUAL (preorder)";
    case Verdict::Kind::NotEqual:
      return "NOT EQUAL\n  " + to_text(v.witness->first) + "\n  " + to_text(v.witness->second);
    case Verdict::Kind::TypeMismatch:
      return std::string("TYPE MISMATCH") + (v.source_differs ? " (source)" : "") +
             (v.target_differs ? " (target)" : "");
  }
  return {};
}

std::string to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  auto graphs = nlohmann::ordered_json::array();
  switch (v.kind) {
    case Verdict::Kind::Equal:
      j["verdict"] = "equal";
      j["reason"] = v.reason == Verdict::Reason::ByGraph ? "by-graph" : "by-preorder";
      break;
    case Verdict::Kind::NotEqual:
      j["verdict"] = "not-equal";
      j["reason"] = "graphs differ";
      graphs.push_back(nlohmann::ordered_json::parse(to_json(v.witness->first)));
      graphs.push_back(nlohmann::ordered_json::parse(to_json(v.witness->second)));
      break;
    case Verdict::Kind::TypeMismatch:
      j["verdict"] = "type-mismatch";
      j["reason"] = {{"source_differs", v.source_differs}, {"target_differs", v.target_differs}};
      break;
  }
  j["graphs"] = graphs;
  return j.dump();
}

std::optional<ArrowTerm> inhabited_E(Formula a, Formula b) {
  try {
    return canonical_iso(a, b);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NoArrow) return std::nullopt;
    throw;
  }
}

namespace {

std::size_t generators(Formula f) { return f.functor_count() + f.letter_count(); }

struct Atom {
  Formula f;
  std::size_t pos;
};

std::vector<Atom> atoms_at(const StrictFormula& s, std::size_t start) {
  std::vector<Atom> out;
  for (Formula a : s.atoms()) {
    out.push_back({a, start});
    start += generators(a);
  }
  return out;
}

// Splits s into consecutive groups, one per atom of t, by letter count.
bool match(const std::vector<Atom>& s, const std::vector<Atom>& t, std::vector<std::size_t>& labels) {
  std::size_t i = 0;
  for (const Atom& target : t) {
    if (target.f.is_letter()) {
      if (i >= s.size() || s[i].f != target.f) return false;
      labels[s[i].pos] = target.pos;
      ++i;
      continue;
    }
    std::size_t need = target.f.letter_count(), got = 0;
    std::vector<Atom> inner;
    while (got < need) {
      if (i >= s.size() || !s[i].f.is_app() || s[i].f.functor() != target.f.functor()) return false;
      labels[s[i].pos] = target.pos;
      got += s[i].f.letter_count();
      for (const Atom& x : atoms_at(strictify_formula(s[i].f.body()), s[i].pos + 1)) inner.push_back(x);
      ++i;
    }
    if (got != need) return false;
    if (!match(inner, atoms_at(strictify_formula(target.f.body()), target.pos + 1), labels))
      return false;
  }
  return i == s.size();
}

ArrowTerm witness(Formula a, Formula b, const NormalFormMc& nf) {
  return frame(lift_strict(readback(nf)), a, b);
}

std::string generator_name(const Occurrence& o) {
  return o.is_functor ? "E" + std::to_string(o.functor) : o.name;
}

std::set<std::string> names(const std::vector<Occurrence>& occ, const std::set<std::size_t>& idx) {
  std::set<std::string> out;
  for (std::size_t k : idx) out.insert(generator_name(occ[k]));
  return out;
}

}  // namespace

std::optional<ArrowTerm> inhabited_Mminus(Formula a, Formula b) {
  if (a.unit_count() > 0 || b.unit_count() > 0)
    throw Error(ErrorKind::UnitPresent, "I does not occur in objects without a unit");
  StrictFormula sa = strictify_formula(a), sb = strictify_formula(b);
  if (sa.embedded().letter_count() != sb.embedded().letter_count()) return std::nullopt;
  std::vector<std::size_t> labels(generators(sa.embedded()));
  if (!match(atoms_at(sa, 0), atoms_at(sb, 0), labels)) return std::nullopt;
  auto nf = realize(sa, sb, labels, false);
  if (!nf) return std::nullopt;
  return witness(a, b, *nf);
}

bool theoremhood_criterion(Formula a, Formula b) {
  if (!is_diversified(a, DiversityMode::Objects))
    throw Error(ErrorKind::PreconditionViolated, "source is not diversified on objects");
  if (!is_diversified(b, DiversityMode::Both))
    throw Error(ErrorKind::PreconditionViolated, "target is not diversified");
  auto oa = generator_occurrences(a);
  auto ob = generator_occurrences(b);
  std::set<std::string> ga, gb;
  for (const auto& o : oa) ga.insert(generator_name(o));
  for (const auto& o : ob) gb.insert(generator_name(o));
  // B may hold functors created from I; every generator of A must survive.
  for (const auto& g : ga)
    if (!gb.count(g)) return false;
  for (const auto& o : ob)
    if (!o.is_functor && !ga.count(o.name)) return false;
  for (std::size_t k = 0; k < ob.size(); ++k) {
    if (!ob[k].is_functor) continue;
    std::set<std::string> want;
    for (const auto& n : names(ob, scope_of(b, k)))
      if (ga.count(n)) want.insert(n);
    std::set<std::string> have;
    for (std::size_t m = 0; m < oa.size(); ++m)
      if (oa[m].is_functor && oa[m].functor == ob[k].functor)
        for (const auto& n : names(oa, scope_of(a, m))) have.insert(n);
    if (have != want) return false;
  }
  // Every occurrence keeps the functors around it; scopes alone miss a
  // letterless E^i outside an E^j that holds another E^i.
  auto around = [](Formula f, const std::vector<Occurrence>& occ) {
    std::vector<std::set<unsigned>> out(occ.size());
    for (std::size_t k = 0; k < occ.size(); ++k)
      if (occ[k].is_functor)
        for (std::size_t m : scope_of(f, k)) out[m].insert(occ[k].functor);
    return out;
  };
  auto aa = around(a, oa), ab = around(b, ob);
  std::map<std::string, std::size_t> in_b;
  for (std::size_t k = 0; k < ob.size(); ++k) in_b[generator_name(ob[k])] = k;
  for (std::size_t m = 0; m < oa.size(); ++m)
    if (aa[m] != ab[in_b.at(generator_name(oa[m]))]) return false;
  return true;
}

std::optional<ArrowTerm> theoremhood_Mc(Formula a, Formula b) {
  if (!theoremhood_criterion(a, b)) return std::nullopt;
  StrictFormula sa = strictify_formula(a), sb = strictify_formula(b);
  auto oa = generator_occurrences(sa.embedded());
  auto ob = generator_occurrences(sb.embedded());
  std::map<std::string, std::size_t> where;
  for (std::size_t k = 0; k < ob.size(); ++k) where[generator_name(ob[k])] = k;
  std::vector<std::size_t> labels;
  for (const auto& o : oa) labels.push_back(where.at(generator_name(o)));
  auto nf = realize(sa, sb, labels, true);
  if (!nf) throw Error(ErrorKind::Internal, "criterion holds but no arrow was built");
  return witness(a, b, *nf);
}

}  // namespace cohere
