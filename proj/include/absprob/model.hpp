#pragma once

#include <memory>
#include <vector>

#include "absprob/formula.hpp"
#include "absprob/vocabulary.hpp"

namespace absprob {

/// Total truth assignment over a universe.
class Model {
 public:
  Model(std::shared_ptr<const Universe> universe, std::vector<bool> values);
  /// All atoms false.
  explicit Model(std::shared_ptr<const Universe> universe);

  const Universe& universe() const { return *universe_; }
  const std::shared_ptr<const Universe>& universe_ptr() const { return universe_; }
  const std::vector<bool>& values() const { return values_; }

  bool value(std::size_t index) const { return values_[index]; }
  bool value(const GroundAtom& atom) const { return values_[universe_->index_of(atom)]; }
  void set(std::size_t index, bool v) { values_[index] = v; }
  void set(const GroundAtom& atom, bool v) { values_[universe_->index_of(atom)] = v; }

  /// One literal per universe atom, in universe order.
  std::vector<Literal> literals() const;

  friend bool operator==(const Model& a, const Model& b) {
    return a.values_ == b.values_ && a.universe_->atoms() == b.universe_->atoms();
  }

 private:
  std::shared_ptr<const Universe> universe_;
  std::vector<bool> values_;
};

/// M ⊨ f for a ground formula. Throws WellFormednessError on atoms outside
/// the model's universe.
bool evaluate(const Model& model, const Formula& f);

/// Conjunction of the literals true in the model (its characteristic formula).
Formula model_formula(const Model& model);

}  // namespace absprob
