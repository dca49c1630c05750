#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "absprob/formula.hpp"
#include "absprob/model.hpp"
#include "absprob/rational.hpp"
#include "absprob/theory.hpp"

namespace absprob {

enum class NegationDefault {
  One,         // unmentioned literals weigh 1
  Complement,  // unmentioned ¬p weighs 1 - w(p) when p is mentioned
};

/// Literal weights: explicit entries plus a default for the rest.
class WeightFn {
 public:
  explicit WeightFn(NegationDefault negation_default = NegationDefault::One)
      : default_(negation_default) {}

  /// Throws WellFormednessError for negative weights, and for positive
  /// weights above 1 under the complement default.
  void set(const Literal& literal, Rational weight);
  void set(const GroundAtom& atom, Rational positive, Rational negative);

  NegationDefault negation_default() const { return default_; }
  const std::map<Literal, Rational>& entries() const { return entries_; }
  std::optional<Rational> explicit_weight(const Literal& literal) const;

  Rational weight(const Literal& literal) const;

  /// (w(p), w(¬p)) per universe atom. Throws WellFormednessError when an
  /// entry names an atom outside the universe.
  std::vector<std::pair<Rational, Rational>> resolve(const Universe& universe) const;

  friend bool operator==(const WeightFn&, const WeightFn&) = default;

 private:
  NegationDefault default_;
  std::map<Literal, Rational> entries_;
};

/// Product of the weights of the literals true in the model.
Rational model_weight(const Model& model, const WeightFn& weights);

/// Weighted model count of theory ∧ extra, by component-caching DPLL.
Rational wmc(const Theory& theory, const WeightFn& weights, const Formula& extra = Formula::top());
double wmc_float(const Theory& theory, const WeightFn& weights, const Formula& extra = Formula::top());

/// Reference count by enumerating assignments (with pruning of falsified
/// branches). Independent of the DPLL counter.
Rational wmc_enumerate(const Theory& theory, const WeightFn& weights, const Formula& extra = Formula::top());

/// Throws ZeroPartition when WMC(theory) = 0.
Rational probability(const Formula& phi, const Theory& theory, const WeightFn& weights);
/// Throws ZeroEvidence when WMC(evidence ∧ theory) = 0.
Rational conditional(const Formula& phi, const Formula& evidence, const Theory& theory,
                     const WeightFn& weights);
double probability_float(const Formula& phi, const Theory& theory, const WeightFn& weights);
double conditional_float(const Formula& phi, const Formula& evidence, const Theory& theory,
                         const WeightFn& weights);

/// A weighted theory with its partition function computed once.
class ProbabilitySpace {
 public:
  /// Throws ZeroPartition when the partition function vanishes.
  ProbabilitySpace(Theory theory, WeightFn weights);

  const Theory& theory() const { return theory_; }
  const WeightFn& weights() const { return weights_; }
  const Rational& partition() const { return partition_; }

  /// WMC(phi ∧ theory).
  Rational mass(const Formula& phi) const;
  Rational probability(const Formula& phi) const;
  Rational conditional(const Formula& phi, const Formula& evidence) const;

 private:
  Theory theory_;
  WeightFn weights_;
  Rational partition_;
};

}  // namespace absprob
