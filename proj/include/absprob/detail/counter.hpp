#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absprob/detail/propositional.hpp"

namespace absprob::detail {

struct KeyHash {
  std::size_t operator()(const std::vector<int>& key) const noexcept;
};

/// Weighted model counter: DPLL with unit propagation, connected-component
/// decomposition and a component cache. Gate variables must carry weight
/// (1, 1) for the count to equal the count over the primaries.
template <class Number>
class Counter {
 public:
  /// weights[v] = (w(v), w(¬v)) for every variable.
  Counter(const Cnf& cnf, std::vector<std::pair<Number, Number>> weights);

  Number count();

 private:
  bool assign(Lit l);
  bool propagate();
  void undo(std::size_t mark);
  bool satisfied(int clause) const;
  Number weight_of(Lit l) const;
  Number count_component(std::vector<int> vars, std::vector<int> clauses);
  /// Splits the unsatisfied clauses among `clauses` into connected components
  /// over the unassigned variables among `vars`; multiplies free variables
  /// into `factor`.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> components(const std::vector<int>& vars,
                                                                       const std::vector<int>& clauses,
                                                                       Number& factor);

  int num_vars_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> occurrences_;       // by literal
  std::vector<std::vector<int>> var_clauses_;       // by variable
  std::vector<std::pair<Number, Number>> weights_;  // by variable
  std::vector<std::int8_t> value_;
  std::vector<Lit> trail_;
  std::size_t head_ = 0;
  bool unsat_ = false;
  std::unordered_map<std::vector<int>, Number, KeyHash> cache_;
  std::vector<int> mark_;  // scratch, by variable / clause
  std::vector<int> clause_mark_;
  int stamp_ = 0;
};

}  // namespace absprob::detail
