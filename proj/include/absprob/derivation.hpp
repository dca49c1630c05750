#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absprob/abstraction.hpp"
#include "absprob/cnf.hpp"
#include "absprob/mapping.hpp"

namespace absprob {

/// A high-level weighted theory together with its refinement mapping.
struct Abstraction {
  WeightedTheory high;
  RefinementMapping mapping;
};

/// Replaces every occurrence of the clause λ in a CNF theory by the fresh
/// nullary atom `t`. λ's atoms must occur only inside occurrences of λ, and
/// every predicate λ mentions must be wholly covered by λ's atoms (those
/// predicates leave the vocabulary). Throws PreconditionError otherwise, or
/// when λ is unsatisfiable.
Abstraction abstract_clause(const WeightedTheory& low, const Clause& lambda, const std::string& t);

/// Single-atom abstraction t ↦ λ for the event partition {λ, γ} of Δl
/// (γ defaults to ¬λ). Throws PreconditionError unless Δl ⊨ (λ ∨ γ) ∧ ¬(λ ∧ γ).
Abstraction abstract_dichotomy(const WeightedTheory& low, const Formula& lambda, const std::string& t,
                               const std::optional<Formula>& gamma = std::nullopt);

/// wh(p) = Pr(m(p), Δl, wl) and wh(¬p) = Pr(¬m(p), Δl, wl) for each high-level atom.
WeightFn derive_weights(const RefinementMapping& m, const WeightedTheory& low, const Theory& high);

enum class TargetClass { WeakExact, WeightedExact };

struct TheoryBound {
  std::size_t max_clause_length = 2;
  std::size_t max_sentences = 1;
};

/// Finite candidate space for the guess-and-check search.
struct HypothesisSpace {
  std::shared_ptr<const Vocabulary> high_vocabulary;
  /// Explicit candidate targets per high-level atom.
  std::map<GroundAtom, std::vector<Formula>> mapping_candidates;
  /// Atoms without explicit candidates get every non-tautological clause
  /// over low-level atoms up to this length (0 disables generation).
  std::size_t generated_clause_length = 3;
  /// Sentence pool for Δh; when empty, clauses over high-level atoms within
  /// the bound are generated.
  std::vector<Formula> theory_candidates;
  TheoryBound theory_bound;
  std::map<GroundAtom, Formula> partial_mapping;
  std::vector<Formula> partial_theory;
  TargetClass target = TargetClass::WeightedExact;
};

struct DerivationResult {
  std::optional<Abstraction> abstraction;
  std::optional<AbstractionReport> report;
  std::size_t candidates_tried = 0;
  std::string search_order = "mapping-major/theory-by-size";

  bool success() const { return abstraction.has_value(); }
};

struct SearchOptions {
  CheckOptions check;
  /// Stop after this many candidates (0 = unbounded).
  std::size_t max_candidates = 0;
};

/// First candidate in canonical order that passes the target tests.
DerivationResult search(const WeightedTheory& low, const HypothesisSpace& space, const SearchOptions& options = {});

/// Every successful candidate, in canonical order.
std::vector<DerivationResult> search_all(const WeightedTheory& low, const HypothesisSpace& space,
                                         const SearchOptions& options = {});

/// Connected components of the sentence/atom sharing graph, each as a theory
/// over the full vocabulary. Sentences without atoms form their own
/// components.
std::vector<Theory> decompose(const Theory& low);

/// Conjunction of weighted theories over pairwise disjoint predicates.
/// Sorts with the same name must agree.
WeightedTheory conjoin(const std::vector<WeightedTheory>& parts);

/// Disjoint union of abstractions. Throws PreconditionError when high-level
/// or low-level vocabularies of two parts share a predicate.
Abstraction compose(const std::vector<Abstraction>& parts);

}  // namespace absprob
