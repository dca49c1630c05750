#pragma once

#include <cstddef>
#include <vector>

#include "absprob/formula.hpp"

namespace absprob {

using Clause = std::vector<Literal>;
using ClauseList = std::vector<Clause>;

inline constexpr std::size_t kDefaultCnfBudget = 4096;

/// Negation normal form: only atoms carry negations; Implies/Iff expanded.
Formula to_nnf(const Formula& f);

/// Equivalent CNF over the same atoms, by distribution. Tautological clauses
/// and duplicate literals are dropped. Throws CnfBudgetExceeded when more than
/// `budget` clauses would be produced at any stage.
ClauseList to_cnf(const Formula& f, std::size_t budget = kDefaultCnfBudget);

Formula clauses_formula(const ClauseList& clauses);

}  // namespace absprob
