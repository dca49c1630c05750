// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "absprob/abstraction.hpp"
#include "absprob/cli.hpp"
#include "absprob/derivation.hpp"
#include "absprob/document.hpp"
#include "absprob/evidence.hpp"
#include "absprob/wmc.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "properties.hpp"
#include "random.hpp"

using namespace absprob;
using namespace absprob::testing;

namespace {

constexpr double kProbabilityBudget = 1.0;
constexpr double kClassifyBudget = 5.0;
constexpr double kStructuredBudget = 10.0;
constexpr std::size_t kSuiteCases = 200;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok: " : "FAILED: ") + what);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

Formula atom(std::string p, std::vector<std::string> args = {}) {
  return Formula::atom(GroundAtom{std::move(p), std::move(args)});
}

bool witness_has(const Witness& w, const std::string& p, bool positive) {
  for (const auto& l : w.model)
    if (l.atom.predicate == p && l.positive == positive) return true;
  return false;
}

void suite(Outcome& o, const SuiteResult& r, std::size_t min_cases) {
  o.require(r.cases >= min_cases && r.passed(), r.summary());
}

Outcome university_probabilities() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  WeightedTheory low = load_weighted("university/low.thy");
  Rational easy = probability(atom("diff", {"B", "E"}), low.theory, low.weights);
  Rational grade = conditional(atom("grades", {"A", "B", "7"}),
                               atom("takes", {"A", "B"}) && atom("iq", {"A", "L"}) && atom("diff", {"B", "E"}),
                               low.theory, low.weights);
  double t = seconds_since(start);
  o.require(easy == Rational(7, 10), "Pr(diff(B,E)) = " + to_string(easy) + ", want 7/10");
  o.require(grade == Rational(1, 4), "Pr(grades(A,B,7) | ...) = " + to_string(grade) + ", want 1/4");
  o.require(t < kProbabilityBudget, "runtime " + fmt_seconds(t) + " < 1s");
  return o;
}

Outcome university_verdicts() {
  Outcome o;
  FixtureTriple u = university();
  auto start = std::chrono::steady_clock::now();
  AbstractionReport r = classify(u.high, u.low, u.m);
  double t = seconds_since(start);
  for (AbstractionClass c : kAbstractionClasses)
    o.require(r[c].holds(), std::string(class_name(c)) + " holds");
  o.require(t < kClassifyBudget, "runtime " + fmt_seconds(t) + " < 5s");
  return o;
}

Outcome negative_fixtures() {
  Outcome o;
  FixtureTriple c = load_triple("courses", "low.thy", "high.thy", "mapping.map");
  Verdict sound = classify(c.high, c.low, c.m)[AbstractionClass::Sound];
  o.require(sound.fails(), "courses: sound fails");
  o.require(witness_has(sound.witness, "CS", true) && witness_has(sound.witness, "Fieldwork", false),
            "courses: witness has CS(B) and ~Fieldwork(B)");

  FixtureTriple inc = load_triple("university", "low-hard.thy", "high-incomplete.thy", "mapping-incomplete.map");
  o.require(classify(inc.high, inc.low, inc.m)[AbstractionClass::Complete].fails(), "incomplete variant: complete fails");

  FixtureTriple forced = load_triple("university", "low.thy", "high-forced.thy", "mapping-forced.map");
  o.require(classify(forced.high, forced.low, forced.m)[AbstractionClass::WeightedSound].fails(),
            "forced-grade variant: weightedSound fails");

  FixtureTriple uni = load_triple("university", "low-hard.thy", "high-uniform.thy", "mapping-incomplete.map");
  AbstractionReport ur = classify(uni.high, uni.low, uni.m);
  o.require(ur[AbstractionClass::WeightedComplete].fails(), "uniform variant: weightedComplete fails");
  o.require(ur[AbstractionClass::WeightedExact].fails(), "uniform variant: weightedExact fails");
  return o;
}

Outcome weak_versus_weighted() {
  Outcome o;
  FixtureTriple w = load_triple("weak-exact", "low.thy", "high.thy", "mapping.map");
  AbstractionReport r = classify(w.high, w.low, w.m);
  o.require(r[AbstractionClass::WeakExact].holds(), "weakExact holds");
  o.require(r[AbstractionClass::WeightedExact].fails(), "weightedExact fails");
  o.require(r[AbstractionClass::Complete].fails(), "complete fails");
  o.require(r[AbstractionClass::Sound].fails(), "sound fails");
  if (r[AbstractionClass::Sound].holds())
    o.note("m(p) is valid and m(q) unsatisfiable at the low level, so every low-level model has an "
           "m-isomorphic high-level model (p true, q false) and the construction is sound; only "
           "completeness is violated");
  return o;
}

Outcome evidence() {
  Outcome o;
  FixtureTriple u = university();
  Evidence e{Literal{GroundAtom{"diff", {"B", "M"}}, true}};
  Formula concrete = concretize(u.m, e);
  Formula weakening = weaken(u.m, e);
  o.require(concrete == atom("diff", {"B", "N"}), "concretization " + to_string(concrete));
  o.require(oracle_equivalent(weakening, atom("diff", {"B", "M"}) || atom("diff", {"B", "H"})),
            "weakening " + to_string(weakening));
  o.require(is_definable(u.m, e), "definable");
  for (const Formula& phi : {atom("grades", {"A", "B", "G"}), atom("grades", {"A", "B", "O"}),
                             atom("grades", {"A", "B", "B"}) || atom("iq", {"A", "L"})}) {
    HighLevelAnswer a = query_high_level(phi, e, u.high, u.low, u.m, true);
    Rational low = conditional(apply(u.m, phi), weakening, u.low.theory, u.low.weights);
    o.require(a.probability == low,
              "Pr(" + to_string(phi) + " | diff(B,N)) = " + to_string(a.probability) + ", low " + to_string(low));
  }

  std::ostringstream out, err;
  int code = run({"weaken", "--low", fixture_path("university/low.thy").string(), "--high",
                  fixture_path("university/high.thy").string(), "--map", fixture_path("university/mapping.map").string(),
                  "--evidence", "diff(B,M)"},
                 out, err);
  const std::string text = out.str();
  o.require(code == 0 && text.find("concretization: diff(B,N)") != std::string::npos &&
                text.find("weakening: diff(B,M) | diff(B,H)") != std::string::npos &&
                text.find("definable: true") != std::string::npos,
            "weaken command output");
  return o;
}

Outcome derivation(std::uint64_t seed) {
  Outcome o;
  WeightedTheory ten = load_weighted("ten-valued/low.thy");
  std::vector<Formula> first8;
  for (int i = 0; i < 8; ++i) first8.push_back(atom("val", {"v" + std::to_string(i)}));
  Abstraction d = abstract_dichotomy(ten, Formula::disjunction(first8), "t");
  Rational pt = d.high.weights.weight(Literal{GroundAtom{"t", {}}, true});
  Rational pn = d.high.weights.weight(Literal{GroundAtom{"t", {}}, false});
  o.require(pt == Rational(4, 5) && pn == Rational(1, 5), "dichotomy Pr(t) = " + to_string(pt) + ", Pr(~t) = " +
                                                              to_string(pn));
  suite(o, clause_abstraction_suite(seed + 1, 100), 100);
  suite(o, plant_and_find_suite(seed + 2, 100), 100);
  return o;
}

Outcome properties(std::uint64_t seed) {
  Outcome o;
  suite(o, wmc_laws_suite(seed + 10, kSuiteCases), kSuiteCases);
  suite(o, homomorphism_suite(seed + 11, kSuiteCases), kSuiteCases);
  suite(o, sound_consequence_suite(seed + 12, kSuiteCases), kSuiteCases);
  suite(o, complete_consequence_suite(seed + 13, kSuiteCases), kSuiteCases);
  suite(o, weighted_sound_extension_suite(seed + 14, kSuiteCases), kSuiteCases);
  SuiteResult literal = literal_match_suite(seed + 15, kSuiteCases, false);
  suite(o, literal, kSuiteCases);
  if (!literal.passed())
    o.note("literal agreement fixes only the marginals of each image; correlated images (e.g. a <-> b with "
           "m(p) = a, m(q) = b) disagree on conjunctions");
  SuiteResult factorized = literal_match_suite(seed + 16, kSuiteCases, true);
  o.note("independent components: " + factorized.summary());
  suite(o, composition_suite(seed + 17, kSuiteCases), kSuiteCases);
  return o;
}

Outcome engines(std::uint64_t seed) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  suite(o, counter_differential_suite(seed + 20, 1000, 20), 1000);
  o.note("differential runtime " + fmt_seconds(seconds_since(start)));

  Rng rng(seed + 21);
  auto vocab = propositional_vocabulary("x", 40);
  const auto atoms = vocab->universe().atoms();
  for (int round = 0; round < 5; ++round) {
    std::vector<Formula> sentences;
    WeightFn w;
    Rational expected = 1;
    for (std::size_t c = 0; c < 10; ++c) {
      std::vector<GroundAtom> block(atoms.begin() + 4 * c, atoms.begin() + 4 * c + 4);
      auto part = random_cnf(rng, block, uniform(rng, 2, 5), 3);
      auto block_vocab = std::make_shared<Vocabulary>();
      for (const auto& a : block) block_vocab->add_predicate(a.predicate, {});
      WeightFn pw;
      for (const auto& a : block) {
        Rational pos = random_weight(rng, false), neg = random_weight(rng, false);
        w.set(a, pos, neg);
        pw.set(a, pos, neg);
      }
      expected *= oracle_wmc(Theory(std::shared_ptr<const Vocabulary>(block_vocab), part), pw);
      sentences.insert(sentences.end(), part.begin(), part.end());
    }
    auto t0 = std::chrono::steady_clock::now();
    Rational count = wmc(Theory(vocab, sentences), w);
    double t = seconds_since(t0);
    o.require(count == expected && t < kStructuredBudget,
              "40 atoms in 10 components: " + std::string(count == expected ? "exact" : "MISMATCH") + " in " +
                  fmt_seconds(t));
  }
  return o;
}

}  // namespace

int main() {
  const std::uint64_t seed = suite_seed();
  std::cout << "seed " << seed << "\n";
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "university probabilities", university_probabilities},
      {2, "university abstraction verdicts", university_verdicts},
      {3, "negative fixtures", negative_fixtures},
      {4, "weak versus weighted separation", weak_versus_weighted},
      {5, "evidence abstraction", evidence},
      {6, "derivation", [seed] { return derivation(seed); }},
      {7, "property suites", [seed] { return properties(seed); }},
      {8, "engine differential", [seed] { return engines(seed); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double t = seconds_since(start);
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " [" << fmt_seconds(t) << "]\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
    std::cout.flush();
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
