#include "absprob/cnf.hpp"

#include <algorithm>
#include <set>

#include "absprob/errors.hpp"

namespace absprob {

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case FormulaKind::True: return negated ? Formula::bottom() : Formula::top();
    case FormulaKind::False: return negated ? Formula::top() : Formula::bottom();
    case FormulaKind::Atom: return negated ? Formula::negation(f) : f;
    case FormulaKind::Eq: {
      const auto& t = f.terms();
      if (t[0].variable || t[1].variable) throw WellFormednessError("non-ground equality in " + to_string(f));
      bool v = (t[0].name == t[1].name) != negated;
      return v ? Formula::top() : Formula::bottom();
    }
    case FormulaKind::Not: return nnf(f.child(0), !negated);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(nnf(c, negated));
      bool conj = (f.kind() == FormulaKind::And) != negated;
      return conj ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
    }
    case FormulaKind::Implies:
      return nnf(Formula::disjunction({Formula::negation(f.child(0)), f.child(1)}), negated);
    case FormulaKind::Iff: {
      const Formula& a = f.child(0);
      const Formula& b = f.child(1);
      if (!negated)
        return Formula::conjunction({nnf(Formula::disjunction({Formula::negation(a), b}), false),
                                     nnf(Formula::disjunction({a, Formula::negation(b)}), false)});
      return Formula::conjunction({nnf(Formula::disjunction({a, b}), false),
                                   nnf(Formula::disjunction({Formula::negation(a), Formula::negation(b)}), false)});
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      throw WellFormednessError("CNF conversion requires a ground formula: " + to_string(f));
  }
  return f;
}

// Clauses are kept as sorted literal sets during distribution.
using Set = std::set<Literal>;
using Cnf = std::vector<Set>;

bool tautology(const Set& s) {
  for (const auto& l : s)
    if (l.positive && s.count(l.complement())) return true;
  return false;
}

void dedupe(Cnf& cnf) {
  std::set<Set> seen;
  Cnf out;
  for (auto& c : cnf)
    if (seen.insert(c).second) out.push_back(std::move(c));
  cnf = std::move(out);
}

Cnf distribute(const Formula& f, std::size_t budget) {
  switch (f.kind()) {
    case FormulaKind::True: return {};
    case FormulaKind::False: return {Set{}};
    case FormulaKind::Atom: return {Set{Literal{f.ground_atom(), true}}};
    case FormulaKind::Not: return {Set{Literal{f.child(0).ground_atom(), false}}};
    case FormulaKind::And: {
      Cnf out;
      for (const auto& c : f.children()) {
        Cnf part = distribute(c, budget);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > budget) {
          dedupe(out);
          if (out.size() > budget) throw CnfBudgetExceeded(budget);
        }
      }
      dedupe(out);
      return out;
    }
    case FormulaKind::Or: {
      Cnf acc{Set{}};
      for (const auto& c : f.children()) {
        Cnf part = distribute(c, budget);
        if (part.empty()) return {};  // disjunct is valid
        // guards the intermediate product; tautology removal rarely recovers more
        if (acc.size() * part.size() > 64 * budget) throw CnfBudgetExceeded(budget);
        Cnf next;
        for (const auto& a : acc)
          for (const auto& b : part) {
            Set s = a;
            s.insert(b.begin(), b.end());
            if (!tautology(s)) next.push_back(std::move(s));
          }
        dedupe(next);
        if (next.size() > budget) throw CnfBudgetExceeded(budget);
        if (next.empty()) return {};
        acc = std::move(next);
      }
      return acc;
    }
    default: break;
  }
  throw std::logic_error("distribute: formula not in NNF");
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

ClauseList to_cnf(const Formula& f, std::size_t budget) {
  Cnf sets = distribute(to_nnf(f), budget);
  ClauseList out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.emplace_back(s.begin(), s.end());
  return out;
}

Formula clauses_formula(const ClauseList& clauses) {
  std::vector<Formula> parts;
  for (const auto& c : clauses) {
    std::vector<Formula> lits;
    for (const auto& l : c) lits.push_back(Formula::literal(l));
    parts.push_back(lits.size() == 1 ? lits[0] : Formula::disjunction(std::move(lits)));
  }
  if (parts.size() == 1) return parts[0];
  return Formula::conjunction(std::move(parts));
}

}  // namespace absprob
