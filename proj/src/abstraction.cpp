#include "absprob/abstraction.hpp"

#include <stdexcept>

#include "absprob/errors.hpp"

namespace absprob {

std::string_view class_name(AbstractionClass c) {
  switch (c) {
    case AbstractionClass::Sound: return "sound";
    case AbstractionClass::Complete: return "complete";
    case AbstractionClass::WeightedSound: return "weightedSound";
    case AbstractionClass::WeightedComplete: return "weightedComplete";
    case AbstractionClass::WeightedExact: return "weightedExact";
    case AbstractionClass::WeakExact: return "weakExact";
  }
  return "";
}

std::optional<AbstractionClass> parse_class_name(std::string_view name) {
  for (auto c : kAbstractionClasses)
    if (class_name(c) == name) return c;
  return std::nullopt;
}

void AbstractionReport::check_invariants() const {
  auto require = [&](AbstractionClass premise, AbstractionClass consequence) {
    if ((*this)[premise].holds() && !(*this)[consequence].holds())
      throw std::logic_error(std::string(class_name(premise)) + " holds but " +
                             std::string(class_name(consequence)) + " does not");
  };
  for (auto c : {AbstractionClass::WeakExact, AbstractionClass::Sound, AbstractionClass::Complete,
                 AbstractionClass::WeightedSound, AbstractionClass::WeightedComplete})
    require(AbstractionClass::WeightedExact, c);
  require(AbstractionClass::WeightedSound, AbstractionClass::Sound);
  require(AbstractionClass::WeightedComplete, AbstractionClass::Complete);
}

std::vector<Literal> universe_literals(const Universe& universe) {
  std::vector<Literal> out;
  out.reserve(2 * universe.size());
  for (const auto& a : universe.atoms()) {
    out.push_back(Literal{a, true});
    out.push_back(Literal{a, false});
  }
  return out;
}

namespace {

void require_compatible(const Theory& high, const Theory& low, const RefinementMapping& m) {
  if (high.universe().atoms() != m.high_universe().atoms())
    throw PreconditionError("mapping's high-level vocabulary does not match the high-level theory");
  if (low.universe().atoms() != m.low_universe().atoms())
    throw PreconditionError("mapping's low-level vocabulary does not match the low-level theory");
}

void require_separable(const RefinementMapping& m) {
  if (!is_separable(m)) throw NonSeparable("mapping targets share low-level atoms");
}

Witness model_witness(Witness::Kind kind, const Model& model) {
  Witness w;
  w.kind = kind;
  w.model = model.literals();
  return w;
}

Witness literal_witness(const Literal& d, Rational high, Rational low) {
  Witness w;
  w.kind = Witness::Kind::Literal;
  w.literal = d;
  w.high_probability = std::move(high);
  w.low_probability = std::move(low);
  return w;
}

std::optional<Verdict> sound_violation(const Theory& high, const Theory& low, const RefinementMapping& m,
                                       DecisionPath path) {
  auto counter = find_model(low, Formula::negation(apply(m, high.conjunction())));
  if (!counter) return std::nullopt;
  return Verdict::fail(model_witness(Witness::Kind::LowModel, *counter),
                       "low-level model whose profile violates the high-level theory", path);
}

// Pr(d) and Pr(m(d)) for every high-level literal.
struct LiteralTable {
  std::vector<Literal> literals;
  std::vector<Rational> high;
  std::vector<Rational> low;
};

LiteralTable literal_table(const ProbabilitySpace& high, const ProbabilitySpace& low, const RefinementMapping& m) {
  LiteralTable t;
  t.literals = universe_literals(high.theory().universe());
  for (std::size_t i = 0; i < t.literals.size(); i += 2) {
    const GroundAtom& atom = t.literals[i].atom;
    Formula p = Formula::atom(atom);
    Rational ph = high.probability(p);
    Rational pl = low.probability(m.target(atom));
    t.high.push_back(ph);
    t.low.push_back(pl);
    t.high.push_back(1 - ph);
    t.low.push_back(1 - pl);
  }
  return t;
}

enum class Direction { Sound, Complete };

std::optional<Witness> positivity_violation(const LiteralTable& t, Direction dir) {
  for (std::size_t i = 0; i < t.literals.size(); ++i) {
    bool violated = dir == Direction::Sound ? (t.low[i] > 0 && t.high[i] == 0) : (t.high[i] > 0 && t.low[i] == 0);
    if (violated) return literal_witness(t.literals[i], t.high[i], t.low[i]);
  }
  return std::nullopt;
}

std::optional<Witness> mismatch(const LiteralTable& t) {
  for (std::size_t i = 0; i < t.literals.size(); ++i)
    if (t.high[i] != t.low[i]) return literal_witness(t.literals[i], t.high[i], t.low[i]);
  return std::nullopt;
}

// First high-level literal d with d ∧ Δh satisfiable but m(d) ∧ Δl not,
// reported through the first high-level model containing d.
std::optional<Witness> literal_completeness_violation(const Theory& high, const Theory& low,
                                                      const RefinementMapping& m) {
  for (const auto& d : universe_literals(high.universe())) {
    auto mh = find_model(high, Formula::literal(d));
    if (!mh) continue;
    if (!is_satisfiable(apply(m, Formula::literal(d)), low)) {
      Witness w = model_witness(Witness::Kind::HighModel, *mh);
      w.literal = d;
      return w;
    }
  }
  return std::nullopt;
}

Verdict weak_exact_exact(const ProbabilitySpace& high, const ProbabilitySpace& low, const RefinementMapping& m,
                         const CheckOptions& options) {
  std::optional<Verdict> result;
  for_each_model(high.theory(), Formula::top(), [&](const Model& mh) {
    Rational ph = model_weight(mh, high.weights()) / high.partition();
    Rational pl = low.probability(apply(m, model_formula(mh)));
    if (ph != pl) {
      Witness w = model_witness(Witness::Kind::HighModel, mh);
      w.high_probability = ph;
      w.low_probability = pl;
      result = Verdict::fail(std::move(w), "high-level model with mismatched probability");
      return false;
    }
    return true;
  }, options.cap);
  return result ? *result : Verdict::hold();
}

}  // namespace

Verdict check_sound(const Theory& high, const Theory& low, const RefinementMapping& m) {
  require_compatible(high, low, m);
  auto v = sound_violation(high, low, m, DecisionPath::Exact);
  return v ? *v : Verdict::hold();
}

Verdict check_complete(const Theory& high, const Theory& low, const RefinementMapping& m,
                       const CheckOptions& options) {
  require_compatible(high, low, m);
  std::optional<Verdict> result;
  for_each_model(high, Formula::top(), [&](const Model& mh) {
    if (is_satisfiable(apply(m, model_formula(mh)), low)) return true;
    result = Verdict::fail(model_witness(Witness::Kind::HighModel, mh),
                           "high-level model with no isomorphic low-level model");
    return false;
  }, options.cap);
  return result ? *result : Verdict::hold();
}

Verdict check_weighted_sound(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m) {
  Verdict sound = check_sound(high.theory, low.theory, m);
  if (!sound.holds()) return Verdict::fail(sound.witness, "not sound: " + sound.reason);
  ProbabilitySpace h(high.theory, high.weights);
  ProbabilitySpace l(low.theory, low.weights);
  if (auto w = positivity_violation(literal_table(h, l, m), Direction::Sound))
    return Verdict::fail(*w, "literal probable at the low level but not at the high level");
  return Verdict::hold();
}

Verdict check_weighted_complete(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m,
                                const CheckOptions& options) {
  Verdict complete = check_complete(high.theory, low.theory, m, options);
  if (!complete.holds()) return Verdict::fail(complete.witness, "not complete: " + complete.reason);
  ProbabilitySpace h(high.theory, high.weights);
  ProbabilitySpace l(low.theory, low.weights);
  if (auto w = positivity_violation(literal_table(h, l, m), Direction::Complete))
    return Verdict::fail(*w, "literal probable at the high level but not at the low level");
  return Verdict::hold();
}

Verdict check_weak_exact(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m,
                         const CheckOptions& options) {
  require_compatible(high.theory, low.theory, m);
  ProbabilitySpace h(high.theory, high.weights);
  ProbabilitySpace l(low.theory, low.weights);
  return weak_exact_exact(h, l, m, options);
}

Verdict check_weighted_exact(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m,
                             const CheckOptions& options) {
  Verdict sound = check_sound(high.theory, low.theory, m);
  if (!sound.holds()) return Verdict::fail(sound.witness, "not sound: " + sound.reason);
  Verdict complete = check_complete(high.theory, low.theory, m, options);
  if (!complete.holds()) return Verdict::fail(complete.witness, "not complete: " + complete.reason);
  Verdict weak = check_weak_exact(high, low, m, options);
  if (!weak.holds()) return Verdict::fail(weak.witness, "not weak exact: " + weak.reason);
  return Verdict::hold();
}

bool sufficient_sound(const Theory& high, const Theory& low, const RefinementMapping& m) {
  require_compatible(high, low, m);
  require_separable(m);
  for (const auto& phi : high.sentences())
    if (!entails(low, apply(m, phi))) return false;
  return true;
}

bool sufficient_complete(const Theory& high, const Theory& low, const RefinementMapping& m) {
  require_compatible(high, low, m);
  require_separable(m);
  return !literal_completeness_violation(high, low, m).has_value();
}

bool literal_prob_match(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m) {
  require_compatible(high.theory, low.theory, m);
  ProbabilitySpace h(high.theory, high.weights);
  ProbabilitySpace l(low.theory, low.weights);
  return !mismatch(literal_table(h, l, m)).has_value();
}

AbstractionReport classify(const WeightedTheory& high, const WeightedTheory& low, const RefinementMapping& m,
                           const CheckOptions& options) {
  require_compatible(high.theory, low.theory, m);
  AbstractionReport r;
  r.separable = is_separable(m);
  const DecisionPath literal_path = r.separable ? DecisionPath::FastPath : DecisionPath::Exact;
  const bool within_cap = high.theory.universe().size() <= options.cap;
  const std::string over_cap = "high-level universe of " + std::to_string(high.theory.universe().size()) +
                               " atoms exceeds enumeration cap " + std::to_string(options.cap);

  // Δl ⊨ m(⋀Δh) decides soundness exactly; with a separable mapping it is
  // the per-sentence sufficient test.
  {
    auto v = sound_violation(high.theory, low.theory, m, literal_path);
    r[AbstractionClass::Sound] = v ? *v : Verdict::hold(literal_path);
  }

  if (auto w = literal_completeness_violation(high.theory, low.theory, m)) {
    r[AbstractionClass::Complete] =
        Verdict::fail(*w, "high-level literal whose image is unsatisfiable at the low level", literal_path);
  } else if (within_cap) {
    r[AbstractionClass::Complete] = check_complete(high.theory, low.theory, m, options);
  } else if (r.separable) {
    r[AbstractionClass::Complete] = Verdict::hold(DecisionPath::FastPath);
    r[AbstractionClass::Complete].reason = "literal-level test only, unconfirmed unless the low-level theory factors along the mapping; " + over_cap;
  } else {
    r[AbstractionClass::Complete] = Verdict::skip(over_cap);
  }

  std::optional<ProbabilitySpace> h, l;
  std::string zero;
  try {
    h.emplace(high.theory, high.weights);
  } catch (const ZeroPartition&) {
    zero = "high-level theory has zero partition function";
  }
  try {
    l.emplace(low.theory, low.weights);
  } catch (const ZeroPartition&) {
    if (zero.empty()) zero = "low-level theory has zero partition function";
  }

  if (!h || !l) {
    for (auto c : {AbstractionClass::WeightedSound, AbstractionClass::WeightedComplete,
                   AbstractionClass::WeightedExact, AbstractionClass::WeakExact})
      r[c] = Verdict::skip(zero);
  } else {
    LiteralTable table = literal_table(*h, *l, m);

    if (auto w = mismatch(table)) {
      r[AbstractionClass::WeakExact] = Verdict::fail(*w, "literal with mismatched probability", literal_path);
    } else if (within_cap) {
      r[AbstractionClass::WeakExact] = weak_exact_exact(*h, *l, m, options);
    } else if (r.separable) {
      r[AbstractionClass::WeakExact] = Verdict::hold(DecisionPath::FastPath);
      r[AbstractionClass::WeakExact].reason = "literal-level test only, unconfirmed unless the low-level theory factors along the mapping; " + over_cap;
    } else {
      r[AbstractionClass::WeakExact] = Verdict::skip(over_cap);
    }

    auto weighted = [&](AbstractionClass base, Direction dir, const char* unmet, const char* violation) {
      const Verdict& b = r[base];
      if (b.fails()) return Verdict::fail(b.witness, std::string(unmet) + b.reason, b.path);
      if (!b.holds()) return Verdict::skip(b.reason);
      if (auto w = positivity_violation(table, dir)) return Verdict::fail(*w, violation);
      Verdict v = Verdict::hold(b.path);
      v.reason = b.reason;
      return v;
    };
    r[AbstractionClass::WeightedSound] = weighted(AbstractionClass::Sound, Direction::Sound, "not sound: ",
                                                  "literal probable at the low level but not at the high level");
    r[AbstractionClass::WeightedComplete] =
        weighted(AbstractionClass::Complete, Direction::Complete, "not complete: ",
                 "literal probable at the high level but not at the low level");

    Verdict exact = Verdict::hold(DecisionPath::Exact);
    bool skipped = false;
    for (auto [c, label] : {std::pair{AbstractionClass::Sound, "not sound: "},
                            std::pair{AbstractionClass::Complete, "not complete: "},
                            std::pair{AbstractionClass::WeakExact, "not weak exact: "}}) {
      const Verdict& b = r[c];
      if (b.fails()) {
        exact = Verdict::fail(b.witness, label + b.reason, b.path);
        break;
      }
      if (!b.holds()) {
        skipped = true;
        exact = Verdict::skip(b.reason);
      }
      if (b.path == DecisionPath::FastPath && exact.holds()) exact.path = DecisionPath::FastPath;
    }
    if (skipped && !exact.fails()) exact.status = VerdictStatus::Skipped;
    r[AbstractionClass::WeightedExact] = exact;
  }

  for (const auto& v : r.verdicts)
    if (v.path == DecisionPath::FastPath) r.fast_path_used = true;
  r.check_invariants();
  return r;
}

}  // namespace absprob
