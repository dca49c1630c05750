#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "absprob/abstraction.hpp"
#include "absprob/errors.hpp"
#include "absprob/report.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "properties.hpp"
#include "random.hpp"

using namespace absprob;
using namespace absprob::testing;

namespace {

Formula atom(std::string p, std::vector<std::string> args = {}) {
  return Formula::atom(GroundAtom{std::move(p), std::move(args)});
}

std::shared_ptr<const Vocabulary> nullary(std::initializer_list<const char*> names) {
  auto v = std::make_shared<Vocabulary>();
  for (const char* n : names) v->add_predicate(n, {});
  return v;
}

void check_against_expected(const FixtureTriple& t, const std::string& expected) {
  AbstractionReport got = classify(t.high, t.low, t.m);
  AbstractionReport want = parse_report(read_file(fixture_path(expected)));
  for (AbstractionClass c : kAbstractionClasses) {
    INFO(class_name(c));
    CHECK(got[c].status == want[c].status);
    CHECK(got[c].witness == want[c].witness);
  }
  CHECK(got.separable == want.separable);
  CHECK_NOTHROW(got.check_invariants());
}

bool has_literal(const Witness& w, const GroundAtom& a, bool positive) {
  return std::find(w.model.begin(), w.model.end(), Literal{a, positive}) != w.model.end();
}

// Δl = {a ↔ b} with marginal weights, m(p) = a, m(q) = b, Δh empty: every
// literal matches but p and q are independent at the high level only.
struct Correlated {
  WeightedTheory high, low;
  RefinementMapping m;
};

Correlated correlated() {
  auto lv = nullary({"a", "b"});
  auto hv = nullary({"p", "q"});
  WeightFn wl;
  wl.set(GroundAtom{"a", {}}, Rational(1, 2), Rational(1, 2));
  wl.set(GroundAtom{"b", {}}, Rational(1, 2), Rational(1, 2));
  WeightFn wh;
  wh.set(GroundAtom{"p", {}}, Rational(1, 2), Rational(1, 2));
  wh.set(GroundAtom{"q", {}}, Rational(1, 2), Rational(1, 2));
  RefinementMapping m(hv, lv, {{atom("p"), atom("a")}, {atom("q"), atom("b")}});
  return {{Theory(hv, {}), wh}, {Theory(lv, {Formula::iff(atom("a"), atom("b"))}), wl}, m};
}

}  // namespace

TEST_SUITE("abstraction checker") {
  TEST_CASE("university abstraction holds for every class") {
    FixtureTriple u = university();
    AbstractionReport r = classify(u.high, u.low, u.m);
    for (AbstractionClass c : kAbstractionClasses) {
      INFO(class_name(c));
      CHECK(r[c].holds());
    }
    CHECK(r.separable);
    CHECK(r.fast_path_used);
    CHECK(check_sound(u.high.theory, u.low.theory, u.m).holds());
    CHECK(check_complete(u.high.theory, u.low.theory, u.m).holds());
    CHECK(check_weighted_exact(u.high, u.low, u.m).holds());
    CHECK(check_weak_exact(u.high, u.low, u.m).holds());
    CHECK(literal_prob_match(u.high, u.low, u.m));
  }

  TEST_CASE("fixture verdicts match the recorded reports") {
    check_against_expected(university(), "university/expected.json");
    check_against_expected(load_triple("university", "low-hard.thy", "high-incomplete.thy", "mapping-incomplete.map"),
                           "university/expected-incomplete.json");
    check_against_expected(load_triple("university", "low-hard.thy", "high-uniform.thy", "mapping-incomplete.map"),
                           "university/expected-uniform.json");
    check_against_expected(load_triple("university", "low.thy", "high-forced.thy", "mapping-forced.map"),
                           "university/expected-forced.json");
    check_against_expected(load_triple("courses", "low.thy", "high.thy", "mapping.map"), "courses/expected.json");
    check_against_expected(load_triple("weak-exact", "low.thy", "high.thy", "mapping.map"), "weak-exact/expected.json");
    check_against_expected(load_triple("ten-valued", "low.thy", "high.thy", "mapping.map"), "ten-valued/expected.json");
  }

  TEST_CASE("course abstraction is not sound") {
    FixtureTriple c = load_triple("courses", "low.thy", "high.thy", "mapping.map");
    Verdict v = check_sound(c.high.theory, c.low.theory, c.m);
    REQUIRE(v.fails());
    REQUIRE(v.witness.kind == Witness::Kind::LowModel);
    CHECK(has_literal(v.witness, GroundAtom{"CS", {"B"}}, true));
    CHECK(has_literal(v.witness, GroundAtom{"Fieldwork", {"B"}}, false));
    Assignment a;
    for (const auto& l : v.witness.model) a[l.atom] = l.positive;
    CHECK(satisfies(c.low.theory, a));
    CHECK_FALSE(truth(apply(c.m, c.high.theory.conjunction()), a));
    CHECK(check_complete(c.high.theory, c.low.theory, c.m).holds());
  }

  TEST_CASE("incomplete and weighted failures on university variants") {
    FixtureTriple inc = load_triple("university", "low-hard.thy", "high-incomplete.thy", "mapping-incomplete.map");
    CHECK(check_complete(inc.high.theory, inc.low.theory, inc.m).fails());
    CHECK(check_sound(inc.high.theory, inc.low.theory, inc.m).holds());

    FixtureTriple forced = load_triple("university", "low.thy", "high-forced.thy", "mapping-forced.map");
    Verdict ws = check_weighted_sound(forced.high, forced.low, forced.m);
    REQUIRE(ws.fails());
    CHECK(ws.witness.high_probability == Rational(0));
    CHECK(*ws.witness.low_probability > 0);

    FixtureTriple uni = load_triple("university", "low-hard.thy", "high-uniform.thy", "mapping-incomplete.map");
    CHECK(check_weighted_complete(uni.high, uni.low, uni.m).fails());
    CHECK(check_weighted_exact(uni.high, uni.low, uni.m).fails());
  }

  TEST_CASE("weak exactness without soundness and completeness holding together") {
    FixtureTriple w = load_triple("weak-exact", "low.thy", "high.thy", "mapping.map");
    AbstractionReport r = classify(w.high, w.low, w.m);
    CHECK(r[AbstractionClass::WeakExact].holds());
    CHECK(r[AbstractionClass::Complete].fails());
    CHECK(r[AbstractionClass::WeightedExact].fails());
    // The image of p is valid and that of q unsatisfiable, so every
    // low-level model has a high-level partner and soundness holds.
    CHECK(r[AbstractionClass::Sound].holds());
    Rng rng(suite_seed() + 30);
    const Universe& hu = w.m.high_universe();
    for (int i = 0; i < 100; ++i) {
      Formula phi = random_formula(rng, hu.atoms(), 3);
      CHECK(oracle_probability(phi, w.high.theory, w.high.weights) ==
            oracle_probability(apply(w.m, phi), w.low.theory, w.low.weights));
    }
  }

  TEST_CASE("identity abstraction and a perturbed weight") {
    WeightedTheory low = load_weighted("weak-exact/low.thy");
    RefinementMapping id = RefinementMapping::identity(low.theory.vocabulary_ptr());
    AbstractionReport r = classify(low, low, id);
    for (AbstractionClass c : kAbstractionClasses) CHECK(r[c].holds());

    WeightedTheory perturbed = low;
    perturbed.weights.set(Literal{GroundAtom{"s", {}}, true}, Rational(1, 2));
    CHECK_FALSE(literal_prob_match(perturbed, low, id));
    CHECK(check_weak_exact(perturbed, low, id).fails());
    CHECK(check_sound(perturbed.theory, low.theory, id).holds());
  }

  TEST_CASE("literal-level tests") {
    FixtureTriple u = university();
    CHECK(sufficient_sound(u.high.theory, u.low.theory, u.m));
    CHECK(sufficient_complete(u.high.theory, u.low.theory, u.m));

    auto high = nullary({"p", "q"});
    auto low = nullary({"a", "b", "c"});
    RefinementMapping shared(high, low, {{atom("p"), atom("a") || atom("b")}, {atom("q"), atom("b") || atom("c")}});
    Theory th(high, {}), tl(low, {});
    CHECK_THROWS_AS(sufficient_sound(th, tl, shared), NonSeparable);
    CHECK_THROWS_AS(sufficient_complete(th, tl, shared), NonSeparable);

    // p ↦ a with Δl ⊨ ¬a: the high literal p is consistent, its image is not.
    RefinementMapping sep(high, low, {{atom("p"), atom("a")}, {atom("q"), atom("b")}});
    Theory blocked(low, {!atom("a")});
    CHECK_FALSE(sufficient_complete(th, blocked, sep));
    CHECK(check_complete(th, blocked, sep).fails());
    CHECK_FALSE(sufficient_sound(Theory(high, {atom("p")}), tl, sep));
    CHECK(sufficient_sound(Theory(high, {atom("p")}), Theory(low, {atom("a")}), sep));

    std::vector<Literal> lits = universe_literals(sep.high_universe());
    REQUIRE(lits.size() == 4);
    CHECK(lits[0] == Literal{GroundAtom{"p", {}}, true});
    CHECK(lits[1] == Literal{GroundAtom{"p", {}}, false});
    CHECK(lits[2] == Literal{GroundAtom{"q", {}}, true});
  }

  TEST_CASE("literal agreement does not reach correlated conjunctions") {
    Correlated c = correlated();
    CHECK(is_separable(c.m));
    CHECK(literal_prob_match(c.high, c.low, c.m));
    Formula pq = atom("p") && atom("q");
    CHECK(oracle_probability(pq, c.high.theory, c.high.weights) == Rational(1, 4));
    CHECK(oracle_probability(apply(c.m, pq), c.low.theory, c.low.weights) == Rational(1, 2));
    CHECK(sufficient_complete(c.high.theory, c.low.theory, c.m));
    CHECK(check_complete(c.high.theory, c.low.theory, c.m).fails());

    AbstractionReport r = classify(c.high, c.low, c.m);
    CHECK(r[AbstractionClass::WeakExact].fails());
    CHECK(r[AbstractionClass::WeightedExact].fails());
    CHECK(r[AbstractionClass::Complete].fails());
    CHECK(r[AbstractionClass::Sound].holds());
    CHECK_NOTHROW(r.check_invariants());
  }

  TEST_CASE("report invariants reject implied classes that fail") {
    AbstractionReport r;
    for (AbstractionClass c : kAbstractionClasses) r[c] = Verdict::hold();
    CHECK_NOTHROW(r.check_invariants());
    r[AbstractionClass::Sound] = Verdict::fail({}, "x");
    CHECK_THROWS_AS(r.check_invariants(), std::logic_error);
    for (AbstractionClass c : kAbstractionClasses) r[c] = Verdict::fail({}, "x");
    r[AbstractionClass::WeightedExact] = Verdict::hold();
    CHECK_THROWS_AS(r.check_invariants(), std::logic_error);
  }

  TEST_CASE("enumeration cap") {
    FixtureTriple u = university();
    CHECK_THROWS_AS(check_complete(u.high.theory, u.low.theory, u.m, CheckOptions{3}), CapExceeded);
    AbstractionReport r = classify(u.high, u.low, u.m, CheckOptions{3});
    CHECK(r[AbstractionClass::Sound].holds());
    CHECK(r[AbstractionClass::Complete].status != VerdictStatus::Fails);
  }

  TEST_CASE("consequences of soundness and completeness") {
    SuiteResult s = sound_consequence_suite(suite_seed() + 31, 200);
    INFO(s.summary());
    CHECK(s.cases == 200);
    CHECK(s.passed());
    SuiteResult c = complete_consequence_suite(suite_seed() + 32, 200);
    INFO(c.summary());
    CHECK(c.cases == 200);
    CHECK(c.passed());
  }

  TEST_CASE("weighted soundness extends soundness") {
    SuiteResult r = weighted_sound_extension_suite(suite_seed() + 33, 200);
    INFO(r.summary());
    CHECK(r.cases == 200);
    CHECK(r.passed());
  }

  TEST_CASE("weak exactness transfers to every formula") {
    SuiteResult r = weak_exact_formula_suite(suite_seed() + 34, 200);
    INFO(r.summary());
    CHECK(r.cases == 200);
    CHECK(r.passed());
  }

  TEST_CASE("literal agreement on independent components") {
    SuiteResult r = literal_match_suite(suite_seed() + 35, 200, true);
    INFO(r.summary());
    CHECK(r.cases == 200);
    CHECK(r.passed());
  }

  TEST_CASE("sufficient soundness agrees with soundness") {
    FastPathResults r = fast_path_suite(suite_seed() + 36, 200);
    INFO(r.sound.summary());
    CHECK(r.sound.cases >= 200);
    CHECK(r.sound.passed());
  }
}
