#pragma once

#include <memory>
#include <vector>

#include "absprob/formula.hpp"
#include "absprob/model.hpp"
#include "absprob/vocabulary.hpp"

namespace absprob {

/// High-level atom pattern and its low-level target. Variables in the
/// pattern range over the constants of the matching high-level sorts and are
/// substituted into the target, which is then grounded over the low-level
/// vocabulary.
struct MappingEntry {
  Formula pattern;
  Formula target;
};

/// Total map from high-level atoms to ground low-level formulas.
class RefinementMapping {
 public:
  /// Instantiates template entries. Fully ground entries take precedence
  /// over templates; two entries of the same kind covering one atom, or an
  /// uncovered atom, is a WellFormednessError.
  RefinementMapping(std::shared_ptr<const Vocabulary> high, std::shared_ptr<const Vocabulary> low,
                    std::vector<MappingEntry> entries);

  /// Every atom of the vocabulary mapped to itself.
  static RefinementMapping identity(std::shared_ptr<const Vocabulary> vocabulary);

  const Vocabulary& high_vocabulary() const { return *high_; }
  const Vocabulary& low_vocabulary() const { return *low_; }
  const std::shared_ptr<const Vocabulary>& high_vocabulary_ptr() const { return high_; }
  const std::shared_ptr<const Vocabulary>& low_vocabulary_ptr() const { return low_; }
  const Universe& high_universe() const { return *high_universe_; }
  const Universe& low_universe() const { return *low_universe_; }
  const std::shared_ptr<const Universe>& high_universe_ptr() const { return high_universe_; }
  const std::shared_ptr<const Universe>& low_universe_ptr() const { return low_universe_; }

  /// Source entries as given.
  const std::vector<MappingEntry>& entries() const { return entries_; }

  /// Target of each high-level atom, by high universe index.
  const std::vector<Formula>& targets() const { return targets_; }
  const Formula& target(std::size_t index) const { return targets_[index]; }
  /// Throws WellFormednessError for atoms outside the high-level universe.
  const Formula& target(const GroundAtom& atom) const;

  /// Low-level atom indices mentioned by the target of a high-level atom.
  const std::vector<std::size_t>& target_atoms(std::size_t index) const { return target_atoms_[index]; }

 private:
  std::shared_ptr<const Vocabulary> high_;
  std::shared_ptr<const Vocabulary> low_;
  std::shared_ptr<const Universe> high_universe_;
  std::shared_ptr<const Universe> low_universe_;
  std::vector<MappingEntry> entries_;
  std::vector<Formula> targets_;
  std::vector<std::vector<std::size_t>> target_atoms_;
};

/// Homomorphic image of a ground high-level formula. Implies and Iff are
/// rewritten into Not/And/Or before substitution.
Formula apply(const RefinementMapping& m, const Formula& phi);

/// Distinct high-level atoms have targets over disjoint low-level atoms.
bool is_separable(const RefinementMapping& m);

/// The high-level assignment p ↦ (low ⊨ m(p)).
Model induced_profile(const RefinementMapping& m, const Model& low);

bool is_isomorphic(const Model& high, const Model& low, const RefinementMapping& m);

}  // namespace absprob
