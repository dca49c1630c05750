#pragma once

// Brute-force reference semantics used as test oracles. Nothing here calls
// into the library's evaluator, solver or counters.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "absprob/formula.hpp"
#include "absprob/rational.hpp"
#include "absprob/theory.hpp"
#include "absprob/vocabulary.hpp"
#include "absprob/wmc.hpp"

namespace absprob::testing {

using Assignment = std::map<GroundAtom, bool>;

inline bool truth(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: {
      auto it = a.find(f.ground_atom());
      if (it == a.end()) throw std::logic_error("oracle: unassigned atom " + to_string(f.ground_atom()));
      return it->second;
    }
    case FormulaKind::Eq: return f.terms()[0] == f.terms()[1];
    case FormulaKind::Not: return !truth(f.child(0), a);
    case FormulaKind::And:
      for (const auto& c : f.children())
        if (!truth(c, a)) return false;
      return true;
    case FormulaKind::Or:
      for (const auto& c : f.children())
        if (truth(c, a)) return true;
      return false;
    case FormulaKind::Implies: return !truth(f.child(0), a) || truth(f.child(1), a);
    case FormulaKind::Iff: return truth(f.child(0), a) == truth(f.child(1), a);
    case FormulaKind::Forall:
    case FormulaKind::Exists: break;
  }
  throw std::logic_error("oracle: quantified formula");
}

/// Calls visit for each of the 2^n assignments, the first atom most
/// significant and true before false.
inline void each_assignment(const std::vector<GroundAtom>& atoms, const std::function<void(const Assignment&)>& visit) {
  const std::size_t n = atoms.size();
  Assignment a;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    for (std::size_t i = 0; i < n; ++i) a[atoms[i]] = !((code >> (n - 1 - i)) & 1);
    visit(a);
  }
}

inline bool satisfies(const Theory& theory, const Assignment& a) {
  for (const auto& s : theory.sentences())
    if (!truth(s, a)) return false;
  return true;
}

inline std::vector<Assignment> oracle_models(const Theory& theory) {
  std::vector<Assignment> out;
  each_assignment(theory.universe().atoms(), [&](const Assignment& a) {
    if (satisfies(theory, a)) out.push_back(a);
  });
  return out;
}

inline Rational oracle_weight(const Assignment& a, const WeightFn& w) {
  Rational product = 1;
  for (const auto& [atom, value] : a) product *= w.weight(Literal{atom, value});
  return product;
}

inline Rational oracle_wmc(const Theory& theory, const WeightFn& w, const Formula& extra = Formula::top()) {
  Rational total = 0;
  each_assignment(theory.universe().atoms(), [&](const Assignment& a) {
    if (satisfies(theory, a) && truth(extra, a)) total += oracle_weight(a, w);
  });
  return total;
}

inline Rational oracle_probability(const Formula& phi, const Theory& theory, const WeightFn& w) {
  return oracle_wmc(theory, w, phi) / oracle_wmc(theory, w);
}

inline bool oracle_equivalent(const Formula& a, const Formula& b, const std::vector<GroundAtom>& atoms) {
  bool same = true;
  each_assignment(atoms, [&](const Assignment& x) { same = same && truth(a, x) == truth(b, x); });
  return same;
}

/// Equivalence over the atoms the two formulas mention.
inline bool oracle_equivalent(const Formula& a, const Formula& b) {
  std::vector<GroundAtom> atoms = atoms_of(a);
  for (const auto& x : atoms_of(b))
    if (std::find(atoms.begin(), atoms.end(), x) == atoms.end()) atoms.push_back(x);
  return oracle_equivalent(a, b, atoms);
}

}  // namespace absprob::testing
