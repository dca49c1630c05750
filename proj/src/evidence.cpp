#include "absprob/evidence.hpp"

#include "absprob/errors.hpp"
#include "absprob/solver.hpp"

namespace absprob {

Evidence Evidence::from_formula(const Formula& f, const Universe& low) {
  auto l = as_literal(f);
  if (!l) {
    if (f.kind() == FormulaKind::And)
      throw PreconditionError("conjunctive evidence is not supported; condition on a single literal");
    throw PreconditionError("evidence must be a single literal, got " + to_string(f));
  }
  low.index_of(l->atom);
  return Evidence{*l};
}

bool is_pure(const Literal& l, const ClauseList& clauses) {
  bool mentioned = false;
  for (const auto& c : clauses)
    for (const auto& x : c) {
      if (x == l) mentioned = true;
      else if (x.atom == l.atom) return false;
    }
  return mentioned;
}

namespace {

std::vector<std::size_t> concretizing_atoms(const RefinementMapping& m, const Evidence& e, std::size_t budget) {
  m.low_universe().index_of(e.literal.atom);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.targets().size(); ++i)
    if (is_pure(e.literal, to_cnf(m.target(i), budget))) out.push_back(i);
  if (out.empty())
    throw EmptyConcretization("evidence " + to_string(e.literal) + " is mentioned purely in no mapping target");
  return out;
}

Formula disjoin(std::vector<Formula> parts) {
  if (parts.size() == 1) return parts[0];
  return Formula::disjunction(std::move(parts));
}

}  // namespace

Formula concretize(const RefinementMapping& m, const Evidence& e, std::size_t cnf_budget) {
  std::vector<Formula> parts;
  for (auto i : concretizing_atoms(m, e, cnf_budget)) parts.push_back(Formula::atom(m.high_universe().atom(i)));
  return disjoin(std::move(parts));
}

Formula weaken(const RefinementMapping& m, const Evidence& e, std::size_t cnf_budget) {
  std::vector<Formula> parts;
  for (auto i : concretizing_atoms(m, e, cnf_budget)) parts.push_back(m.target(i));
  return disjoin(std::move(parts));
}

bool is_definable(const RefinementMapping& m, const Evidence& e, std::size_t cnf_budget) {
  Formula w = weaken(m, e, cnf_budget);
  try {
    // e is pure in the weakening, so a single clause contains it
    if (to_cnf(w, cnf_budget).size() == 1) return true;
  } catch (const CnfBudgetExceeded&) {
  }
  return !is_satisfiable(Formula::conjunction({Formula::literal(e.literal), Formula::negation(w)}));
}

HighLevelAnswer query_high_level(const Formula& phi, const Evidence& e, const WeightedTheory& high,
                                 const WeightedTheory& low, const RefinementMapping& m, bool verify) {
  check_formula(phi, high.theory.universe());
  if (verify) {
    AbstractionReport report = classify(high, low, m);
    if (!report[AbstractionClass::WeightedExact].holds())
      throw PreconditionError("not a weighted exact abstraction: " + report[AbstractionClass::WeightedExact].reason);
  }
  HighLevelAnswer answer{Rational(0), EvidenceMode::Exact, concretize(m, e), weaken(m, e)};
  Formula e_formula = Formula::literal(e.literal);
  if (equivalent(e_formula, answer.weakening)) {
    answer.mode = EvidenceMode::Exact;
  } else if (is_definable(m, e)) {
    answer.mode = EvidenceMode::Weakened;
  } else {
    throw NotDefinable("evidence " + to_string(e.literal) + " does not entail its weakening " +
                       to_string(answer.weakening));
  }
  answer.probability = conditional(phi, answer.concretization, high.theory, high.weights);
  return answer;
}

}  // namespace absprob
