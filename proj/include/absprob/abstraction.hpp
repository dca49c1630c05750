#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absprob/mapping.hpp"
#include "absprob/rational.hpp"
#include "absprob/solver.hpp"
#include "absprob/theory.hpp"
#include "absprob/wmc.hpp"

namespace absprob {

struct WeightedTheory {
  Theory theory;
  WeightFn weights;
};

enum class AbstractionClass { Sound, Complete, WeightedSound, WeightedComplete, WeightedExact, WeakExact };

inline constexpr std::array<AbstractionClass, 6> kAbstractionClasses{
    AbstractionClass::Sound,         AbstractionClass::Complete,      AbstractionClass::WeightedSound,
    AbstractionClass::WeightedComplete, AbstractionClass::WeightedExact, AbstractionClass::WeakExact};

/// "sound", "complete", "weightedSound", "weightedComplete", "weightedExact", "weakExact".
std::string_view class_name(AbstractionClass c);
std::optional<AbstractionClass> parse_class_name(std::string_view name);

enum class VerdictStatus { Holds, Fails, Skipped };
/// Exact: decided by the definition (model enumeration or an equivalent
/// reduction). FastPath: decided by a literal-level test on a separable
/// mapping.
enum class DecisionPath { Exact, FastPath };

struct Witness {
  enum class Kind { None, LowModel, HighModel, Literal };
  Kind kind = Kind::None;
  /// Full assignment for model witnesses, in universe order.
  std::vector<Literal> model;
  /// High-level literal for literal witnesses.
  std::optional<Literal> literal;
  /// Pr of the high-level event and of its image, when the failure is
  /// probabilistic.
  std::optional<Rational> high_probability;
  std::optional<Rational> low_probability;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Skipped;
  Witness witness;
  std::string reason;
  DecisionPath path = DecisionPath::Exact;

  bool holds() const { return status == VerdictStatus::Holds; }
  bool fails() const { return status == VerdictStatus::Fails; }

  static Verdict hold(DecisionPath path = DecisionPath::Exact) { return {VerdictStatus::Holds, {}, {}, path}; }
  static Verdict fail(Witness w, std::string reason, DecisionPath path = DecisionPath::Exact) {
    return {VerdictStatus::Fails, std::move(w), std::move(reason), path};
  }
  static Verdict skip(std::string reason) { return {VerdictStatus::Skipped, {}, std::move(reason), DecisionPath::Exact}; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct AbstractionReport {
  std::array<Verdict, 6> verdicts;
  bool separable = false;
  bool fast_path_used = false;

  Verdict& operator[](AbstractionClass c) { return verdicts[static_cast<std::size_t>(c)]; }
  const Verdict& operator[](AbstractionClass c) const { return verdicts[static_cast<std::size_t>(c)]; }

  /// Throws std::logic_error if a holding class implies one that does not hold.
  void check_invariants() const;

  friend bool operator==(const AbstractionReport&, const AbstractionReport&) = default;
};

struct CheckOptions {
  std::size_t cap = default_enumeration_cap();
};

/// Every low-level model's induced profile satisfies the high-level theory,
/// decided as Δl ⊨ m(⋀Δh). Witness: first violating low-level model.
Verdict check_sound(const Theory& high, const Theory& low, const RefinementMapping& m);

/// Every high-level model has an m-isomorphic low-level model. Enumerates
/// Models(Δh); throws CapExceeded beyond the cap.
Verdict check_complete(const Theory& high, const Theory& low, const RefinementMapping& m,
                       const CheckOptions& options = {});

Verdict check_weighted_sound(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m);
Verdict check_weighted_complete(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m,
                                const CheckOptions& options = {});

/// Pr(Mh↓) = Pr(m(Mh↓)) for every high-level model. Throws CapExceeded
/// beyond the cap.
Verdict check_weak_exact(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m,
                         const CheckOptions& options = {});

Verdict check_weighted_exact(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m,
                             const CheckOptions& options = {});

/// Δl ⊨ m(φ) for every sentence φ of Δh. Throws NonSeparable.
bool sufficient_sound(const Theory& high, const Theory& low, const RefinementMapping& m);

/// For every high-level literal d: d ∧ Δh satisfiable ⇒ m(d) ∧ Δl
/// satisfiable. Throws NonSeparable.
bool sufficient_complete(const Theory& high, const Theory& low, const RefinementMapping& m);

/// Pr(d, Δh, wh) = Pr(m(d), Δl, wl) for every high-level literal d.
bool literal_prob_match(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m);

/// All six verdicts. Literal-level tests run first on separable mappings:
/// their negative answers are conclusive, positive answers are confirmed by
/// the exact check when the high-level universe is within the cap.
AbstractionReport classify(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m,
                           const CheckOptions& options = {});

/// High-level literals in canonical order: per atom, positive then negative.
std::vector<Literal> universe_literals(const Universe& universe);

}  // namespace absprob
