#pragma once

#include <cstddef>

#include "absprob/abstraction.hpp"
#include "absprob/cnf.hpp"
#include "absprob/mapping.hpp"

namespace absprob {

/// A single low-level literal.
struct Evidence {
  Literal literal;

  /// Accepts an atom or a negated atom of the low-level universe; anything
  /// else is a PreconditionError.
  static Evidence from_formula(const Formula& f, const Universe& low);
};

/// l occurs in the clauses and its complement does not.
bool is_pure(const Literal& l, const ClauseList& clauses);

/// Disjunction of the high-level atoms whose target CNF mentions e purely.
/// Throws EmptyConcretization when there are none.
Formula concretize(const RefinementMapping& m, const Evidence& e, std::size_t cnf_budget = kDefaultCnfBudget);

/// m(m⁻¹(e)): disjunction of the targets of the concretizing atoms.
Formula weaken(const RefinementMapping& m, const Evidence& e, std::size_t cnf_budget = kDefaultCnfBudget);

/// e ⊨ m(m⁻¹(e)).
bool is_definable(const RefinementMapping& m, const Evidence& e, std::size_t cnf_budget = kDefaultCnfBudget);

enum class EvidenceMode {
  Exact,     // e is equivalent to its weakening
  Weakened,  // e only entails its weakening
};

struct HighLevelAnswer {
  Rational probability;
  EvidenceMode mode;
  Formula concretization;
  Formula weakening;
};

/// Pr(phi | m⁻¹(e), Δh, wh). Assumes a weighted exact abstraction; with
/// `verify` the assumption is checked first and a PreconditionError raised
/// when it fails. Throws NotDefinable when e does not entail its weakening.
HighLevelAnswer query_high_level(const Formula& phi, const Evidence& e, const WeightedTheory& high,
                                 const WeightedTheory& low, const RefinementMapping& m, bool verify = false);

}  // namespace absprob
