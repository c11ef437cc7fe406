#pragma once

#include <random>
#include <string>
#include <vector>

#include "cohere/strict.hpp"

namespace cohere::testing {

inline StrictFormula random_object(std::mt19937& rng, int depth, int width = 3) {
  std::vector<Formula> atoms;
  int n = static_cast<int>(rng() % (width + 1));
  for (int k = 0; k < n; ++k) {
    if (depth > 0 && rng() % 3 != 0)
      atoms.push_back(E(1 + rng() % 2, random_object(rng, depth - 1, width).embedded()));
    else
      atoms.push_back(Formula::letter(std::string(1, "pqr"[rng() % 3])));
  }
  return StrictFormula::from_atoms(atoms);
}

// One ψ, ψ₀ or (when `sym`) c step out of s, placed at a random depth.
inline StrictTerm random_step(std::mt19937& rng, const StrictFormula& s, bool sym) {
  std::vector<Formula> a = s.atoms();
  auto part = [&](std::size_t from, std::size_t to) {
    return StrictFormula::from_atoms({a.begin() + from, a.begin() + to});
  };
  auto place = [&](std::size_t lo, std::size_t hi, const StrictTerm& h) {
    StrictTerm t = h;
    if (lo > 0) t = StrictTerm::ten(StrictTerm::id(part(0, lo)), t);
    if (hi < a.size()) t = StrictTerm::ten(t, StrictTerm::id(part(hi, a.size())));
    return t;
  };
  std::vector<std::size_t> apps;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].is_app()) apps.push_back(k);
  if (!apps.empty() && rng() % 3 == 0) {
    std::size_t k = apps[rng() % apps.size()];
    StrictTerm inner = random_step(rng, strictify_formula(a[k].body()), sym);
    return place(k, k + 1, StrictTerm::under(a[k].functor(), inner));
  }
  std::vector<std::size_t> merges;
  for (std::size_t k = 0; k + 1 < a.size(); ++k)
    if (a[k].is_app() && a[k + 1].is_app() && a[k].functor() == a[k + 1].functor())
      merges.push_back(k);
  int choice = static_cast<int>(rng() % 4);
  if (choice <= 1 && !merges.empty()) {
    std::size_t k = merges[rng() % merges.size()];
    return place(k, k + 2,
                 StrictTerm::psi(a[k].functor(), strictify_formula(a[k].body()),
                                 strictify_formula(a[k + 1].body())));
  }
  if (choice == 2 && sym && a.size() >= 2) {
    std::size_t k = rng() % (a.size() - 1);
    return place(k, k + 2, StrictTerm::sym(part(k, k + 1), part(k + 1, k + 2)));
  }
  std::size_t k = rng() % (a.size() + 1);
  StrictTerm c = StrictTerm::psi0(1 + rng() % 2);
  StrictTerm t = c;
  if (k > 0) t = StrictTerm::ten(StrictTerm::id(part(0, k)), t);
  if (k < a.size()) t = StrictTerm::ten(t, StrictTerm::id(part(k, a.size())));
  return t;
}

inline StrictTerm random_strict_term(std::mt19937& rng, const StrictFormula& s, int steps, bool sym) {
  StrictTerm t = StrictTerm::id(s);
  bool started = false;
  for (int k = 0; k < steps; ++k) {
    StrictTerm f = random_step(rng, t.target(), sym);
    t = started ? StrictTerm::comp(f, t) : f;
    started = true;
  }
  return t;
}

}  // namespace cohere::testing
