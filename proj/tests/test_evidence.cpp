#include <doctest.h>

#include "absprob/errors.hpp"
#include "absprob/evidence.hpp"
#include "absprob/solver.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace absprob;
using namespace absprob::testing;

namespace {

Formula atom(std::string p, std::vector<std::string> args = {}) {
  return Formula::atom(GroundAtom{std::move(p), std::move(args)});
}

Evidence literal(std::string p, std::vector<std::string> args, bool positive = true) {
  return Evidence{Literal{GroundAtom{std::move(p), std::move(args)}, positive}};
}

std::shared_ptr<const Vocabulary> nullary(std::initializer_list<const char*> names) {
  auto v = std::make_shared<Vocabulary>();
  for (const char* n : names) v->add_predicate(n, {});
  return v;
}

Clause clause(std::initializer_list<std::pair<const char*, bool>> lits) {
  Clause c;
  for (auto [p, pos] : lits) c.push_back(Literal{GroundAtom{p, {}}, pos});
  return c;
}

}  // namespace

TEST_SUITE("evidence") {
  TEST_CASE("pure literals") {
    ClauseList cnf{clause({{"a", true}, {"b", false}}), clause({{"a", true}, {"c", true}})};
    CHECK(is_pure(Literal{GroundAtom{"a", {}}, true}, cnf));
    CHECK_FALSE(is_pure(Literal{GroundAtom{"a", {}}, false}, cnf));
    CHECK(is_pure(Literal{GroundAtom{"b", {}}, false}, cnf));
    CHECK_FALSE(is_pure(Literal{GroundAtom{"d", {}}, true}, cnf));
    cnf.push_back(clause({{"c", false}}));
    CHECK_FALSE(is_pure(Literal{GroundAtom{"c", {}}, true}, cnf));
    CHECK_FALSE(is_pure(Literal{GroundAtom{"c", {}}, false}, cnf));
  }

  TEST_CASE("university concretization and weakening") {
    FixtureTriple u = university();
    Evidence m = literal("diff", {"B", "M"});
    CHECK(concretize(u.m, m) == atom("diff", {"B", "N"}));
    CHECK(oracle_equivalent(weaken(u.m, m), atom("diff", {"B", "M"}) || atom("diff", {"B", "H"})));
    CHECK(is_definable(u.m, m));

    Evidence e = literal("diff", {"B", "E"});
    CHECK(concretize(u.m, e) == atom("diff", {"B", "E"}));
    CHECK(weaken(u.m, e) == atom("diff", {"B", "E"}));
    CHECK(is_definable(u.m, e));

    CHECK_THROWS_AS(concretize(u.m, literal("diff", {"B", "M"}, false)), EmptyConcretization);
  }

  TEST_CASE("evidence must be a literal") {
    FixtureTriple u = university();
    const Universe& lu = u.m.low_universe();
    Evidence e = Evidence::from_formula(!atom("takes", {"A", "B"}), lu);
    CHECK(e.literal == Literal{GroundAtom{"takes", {"A", "B"}}, false});
    CHECK_THROWS_AS(Evidence::from_formula(Formula::top(), lu), PreconditionError);
    CHECK_THROWS_AS(Evidence::from_formula(atom("takes", {"A", "B"}) && atom("iq", {"A", "L"}), lu), PreconditionError);
    CHECK_THROWS_AS(Evidence::from_formula(atom("nope"), lu), Error);
  }

  TEST_CASE("definability") {
    auto high = nullary({"n", "k"});
    auto low = nullary({"a", "b", "c"});
    // a occurs purely in the CNF of a ∧ b but does not entail it.
    RefinementMapping m(high, low, {{atom("n"), atom("a") && atom("b")}, {atom("k"), atom("c") || atom("a")}});
    Evidence a = literal("a", {});
    CHECK(oracle_equivalent(concretize(m, a), atom("n") || atom("k")));
    CHECK(oracle_equivalent(weaken(m, a), (atom("a") && atom("b")) || atom("c") || atom("a")));
    CHECK(is_definable(m, a));

    RefinementMapping narrow(high, low, {{atom("n"), atom("a") && atom("b")}, {atom("k"), atom("c")}});
    CHECK(concretize(narrow, a) == atom("n"));
    CHECK_FALSE(is_definable(narrow, a));
    WeightedTheory wl{Theory(low, {}), WeightFn{}};
    WeightedTheory wh{Theory(high, {}), WeightFn{}};
    CHECK_THROWS_AS(query_high_level(atom("k"), a, wh, wl, narrow), NotDefinable);

    // A second course whose difficulty is mapped through a conjunction.
    Vocabulary hv;
    hv.add_sort("course", {"B", "C"});
    hv.add_predicate("hard", {"course"});
    Vocabulary lv;
    lv.add_sort("course", {"B", "C"});
    lv.add_sort("difficulty", {"E", "H"});
    lv.add_predicate("diff", {"course", "difficulty"});
    RefinementMapping courses(std::make_shared<const Vocabulary>(hv), std::make_shared<const Vocabulary>(lv),
                              {{atom("hard", {"B"}), atom("diff", {"B", "H"})},
                               {atom("hard", {"C"}), atom("diff", {"C", "H"}) && atom("diff", {"B", "H"})}});
    Evidence ch = literal("diff", {"C", "H"});
    CHECK(concretize(courses, ch) == atom("hard", {"C"}));
    CHECK_FALSE(is_definable(courses, ch));
    CHECK(is_definable(courses, literal("diff", {"B", "H"})));
  }

  TEST_CASE("high-level answers equal low-level conditionals on the weakening") {
    FixtureTriple u = university();
    Evidence m = literal("diff", {"B", "M"});
    Formula phi = atom("grades", {"A", "B", "G"});
    HighLevelAnswer a = query_high_level(phi, m, u.high, u.low, u.m, true);
    CHECK(a.mode == EvidenceMode::Weakened);
    CHECK(a.concretization == atom("diff", {"B", "N"}));
    CHECK(a.probability == conditional(apply(u.m, phi), a.weakening, u.low.theory, u.low.weights));
    CHECK(a.probability == conditional(phi, atom("diff", {"B", "N"}), u.high.theory, u.high.weights));

    HighLevelAnswer exact = query_high_level(phi, literal("diff", {"B", "E"}), u.high, u.low, u.m);
    CHECK(exact.mode == EvidenceMode::Exact);
    CHECK(exact.probability == conditional(apply(u.m, phi), atom("diff", {"B", "E"}), u.low.theory, u.low.weights));
  }

  TEST_CASE("verification rejects abstractions that are not weighted exact") {
    FixtureTriple forced = load_triple("university", "low.thy", "high-forced.thy", "mapping-forced.map");
    Evidence e = literal("diff", {"B", "E"});
    CHECK_THROWS_AS(query_high_level(atom("grades", {"A", "B", "G"}), e, forced.high, forced.low, forced.m, true),
                    PreconditionError);
    CHECK_NOTHROW(query_high_level(atom("grades", {"A", "B", "G"}), e, forced.high, forced.low, forced.m, false));
  }

  TEST_CASE("conditioning through an abstraction on sampled queries") {
    FixtureTriple u = university();
    const Universe& hu = u.m.high_universe();
    Rng rng(suite_seed() + 40);
    std::vector<Evidence> evidence;
    for (const auto& a : u.m.low_universe().atoms())
      for (bool pos : {true, false}) {
        Evidence e{Literal{a, pos}};
        try {
          concretize(u.m, e);
        } catch (const EmptyConcretization&) {
          continue;
        }
        if (is_definable(u.m, e) && wmc(u.low.theory, u.low.weights, Formula::literal(e.literal)) != 0)
          evidence.push_back(e);
      }
    REQUIRE(evidence.size() >= 4);
    std::size_t exact_cases = 0, weakened_cases = 0;
    for (int i = 0; i < 60; ++i) {
      Formula phi = random_formula(rng, hu.atoms(), 3);
      const Evidence& e = pick(rng, evidence);
      HighLevelAnswer a = query_high_level(phi, e, u.high, u.low, u.m);
      INFO(to_string(phi), " given ", to_string(e.literal));
      CHECK(a.probability == conditional(apply(u.m, phi), a.weakening, u.low.theory, u.low.weights));
      if (a.mode == EvidenceMode::Exact) {
        ++exact_cases;
        CHECK(a.probability == conditional(apply(u.m, phi), Formula::literal(e.literal), u.low.theory, u.low.weights));
      } else {
        ++weakened_cases;
        CHECK(entails(u.low.theory.with({Formula::literal(e.literal)}), a.weakening));
      }
    }
    CHECK(exact_cases > 0);
    CHECK(weakened_cases > 0);
  }

  TEST_CASE("ten-valued evidence") {
    FixtureTriple t = load_triple("ten-valued", "low.thy", "high.thy", "mapping.map");
    Evidence v3 = literal("val", {"v3"});
    CHECK(concretize(t.m, v3) == atom("t"));
    CHECK(is_definable(t.m, v3));
    HighLevelAnswer a = query_high_level(atom("t"), v3, t.high, t.low, t.m, true);
    CHECK(a.probability == 1);
    CHECK_THROWS_AS(concretize(t.m, literal("val", {"v9"})), EmptyConcretization);
  }
}
