#pragma once

// Integer clause representation shared by the satisfiability search and the
// weighted counter. Variables 0..primary-1 are universe atoms in universe
// order; higher variables are gate outputs, each defined by a full
// equivalence so that every assignment to the primaries extends uniquely.

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "absprob/formula.hpp"
#include "absprob/vocabulary.hpp"

namespace absprob::detail {

using Lit = int;

inline Lit make_lit(int var, bool positive) { return 2 * var + (positive ? 0 : 1); }
inline int lit_var(Lit l) { return l >> 1; }
inline bool lit_positive(Lit l) { return (l & 1) == 0; }
inline Lit negate(Lit l) { return l ^ 1; }

struct Cnf {
  int num_primary = 0;
  int num_vars = 0;
  std::vector<std::vector<Lit>> clauses;
};

class CnfEncoder {
 public:
  explicit CnfEncoder(const Universe& universe);

  /// Asserts a ground formula. Atoms must belong to the universe.
  void add(const Formula& f);

  const Cnf& cnf() const { return cnf_; }

 private:
  Lit encode(const Formula& f);
  Lit constant(bool value);
  int fresh();
  void clause(std::vector<Lit> c) { cnf_.clauses.push_back(std::move(c)); }

  const Universe& universe_;
  Cnf cnf_;
  std::unordered_map<const void*, Lit> memo_;
  std::vector<Formula> retained_;  // keeps memo keys alive
  int true_var_ = -1;
};

/// DPLL with unit propagation. Branches on variables in index order,
/// positive phase first, so solutions projected on the primaries come out in
/// lexicographic order with true before false.
class SatSolver {
 public:
  explicit SatSolver(const Cnf& cnf);

  /// Calls `visit` with the primary assignment of each solution, in canonical
  /// order, until it returns false. Each primary assignment is reported once.
  void enumerate(const std::function<bool(const std::vector<bool>&)>& visit);

  /// First solution in canonical order, projected on the primaries.
  std::optional<std::vector<bool>> first();

  bool satisfiable() { return first().has_value(); }

 private:
  bool assign(Lit l);
  bool propagate();
  void undo(std::size_t mark);
  bool complete(int from);
  bool search(int from, const std::function<bool(const std::vector<bool>&)>& visit);

  int num_primary_;
  int num_vars_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> occurrences_;  // by literal
  std::vector<std::int8_t> value_;             // -1 unassigned
  std::vector<Lit> trail_;
  std::size_t head_ = 0;
  bool conflict_ = false;
};

}  // namespace absprob::detail
