#include <doctest.h>

#include <sstream>

#include "absprob/cli.hpp"
#include "absprob/document.hpp"
#include "absprob/errors.hpp"
#include "absprob/report.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace absprob;
using namespace absprob::testing;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& rel) { return fixture_path(rel).string(); }

std::vector<std::string> check_args(const std::string& dir, const std::string& low, const std::string& high,
                                    const std::string& map) {
  return {"check", "--low", fx(dir + "/" + low), "--high", fx(dir + "/" + high), "--map", fx(dir + "/" + map)};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("documents and command line") {
  TEST_CASE("parse errors carry positions") {
    try {
      parse_theory("(theory\n  (predicates p)\n  (sentences (and p q)))");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(contains(e.what(), "q"));
    }
    try {
      parse_theory("(theory\n  (predicates p)\n  (sentences (and p p))");
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.line >= 1);
      CHECK(contains(e.what(), std::to_string(e.line) + ":" + std::to_string(e.column)));
    }
    try {
      parse_theory("(theory\n  (predicates p)\n  (bogus))");
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
      CHECK(e.column == 3);
    }
    CHECK_THROWS_AS(parse_infix("p & (q |"), ParseError);
  }

  TEST_CASE("weights") {
    TheoryDocument d = parse_theory("(theory (predicates p q) (negation-default complement) (weights (0.25 p) (2/5 q)))");
    CHECK(d.weights.weight(Literal{GroundAtom{"p", {}}, true}) == Rational(1, 4));
    CHECK(d.weights.weight(Literal{GroundAtom{"p", {}}, false}) == Rational(3, 4));
    CHECK(d.weights.weight(Literal{GroundAtom{"q", {}}, true}) == Rational(2, 5));
    CHECK_THROWS_AS(parse_theory("(theory (predicates p) (negation-default complement) (weights (1.3 p)))"), Error);
    CHECK_NOTHROW(parse_theory("(theory (predicates p) (negation-default one) (weights (1.3 p)))"));
    CHECK_THROWS_AS(parse_theory("(theory (predicates p) (weights (0.5 p) (0.25 p)))"), Error);
    CHECK_THROWS_AS(parse_theory("(theory (predicates p) (weights (-1 p)))"), Error);

    TheoryDocument empty = parse_theory("(theory (predicates p) (sentences))");
    WeightedTheory t = empty.build();
    CHECK(t.theory.sentences().empty());
    CHECK(oracle_wmc(t.theory, t.weights) == 2);
  }

  TEST_CASE("university document") {
    WeightedTheory low = load_weighted("university/low.thy");
    CHECK(low.weights.weight(Literal{GroundAtom{"diff", {"B", "E"}}, true}) == Rational(7, 10));
    CHECK(low.theory.universe().contains(GroundAtom{"grades", {"A", "B", "7"}}));
    CHECK(probability(parse_infix("diff(B,E)"), low.theory, low.weights) == Rational(7, 10));
  }

  TEST_CASE("infix formulas") {
    Formula f = parse_infix("~p & q -> r | s <-> t");
    Formula expected = Formula::iff(
        Formula::implies(!Formula::atom(GroundAtom{"p", {}}) && Formula::atom(GroundAtom{"q", {}}),
                         Formula::atom(GroundAtom{"r", {}}) || Formula::atom(GroundAtom{"s", {}})),
        Formula::atom(GroundAtom{"t", {}}));
    CHECK(oracle_equivalent(f, expected));
    CHECK(parse_infix("grades(A,B,7)") == Formula::atom(GroundAtom{"grades", {"A", "B", "7"}}));
    CHECK(parse_infix("true") == Formula::top());
  }

  TEST_CASE("query and wmc commands") {
    Outcome q = invoke({"query", fx("university/low.thy"), "--phi", "grades(A,B,7)", "--evidence",
                        "takes(A,B) & iq(A,L) & diff(B,E)"});
    CHECK(q.code == 0);
    CHECK(q.out == "0.25\n");
    Outcome e = invoke({"query", fx("university/low.thy"), "--phi", "diff(B,E)"});
    CHECK(e.out == "0.7\n");
    Outcome z = invoke({"query", fx("university/low.thy"), "--phi", "diff(B,E)", "--evidence", "diff(B,E) & diff(B,H)"});
    CHECK(z.code == 2);
    CHECK_FALSE(z.err.empty());
    Outcome t = invoke({"query", fx("ten-valued/low.thy"), "--phi", "val(v0)", "--evidence", "val(v0) | val(v7) | val(v8)"});
    CHECK(t.out == "1/3 (~0.333333333333)\n");
    CHECK(invoke({"wmc", fx("ten-valued/low.thy")}).out == "1\n");
    CHECK(invoke({"wmc", fx("weak-exact/low.thy"), "--phi", "s & r"}).out == "0.18\n");
  }

  TEST_CASE("check command exit status") {
    Outcome ok = invoke([] {
      auto a = check_args("ten-valued", "low.thy", "high.thy", "mapping.map");
      a.push_back("--exact");
      return a;
    }());
    CHECK(ok.code == 0);

    Outcome c = invoke(check_args("courses", "low.thy", "high.thy", "mapping.map"));
    CHECK(c.code == 1);
    CHECK(contains(c.out, "CS(B)"));
    CHECK(contains(c.out, "~Fieldwork(B)"));

    Outcome w = invoke([] {
      auto a = check_args("weak-exact", "low.thy", "high.thy", "mapping.map");
      a.push_back("--weak");
      return a;
    }());
    CHECK(w.code == 0);

    Outcome missing = invoke({"check", "--low", fx("nope.thy"), "--high", fx("nope.thy"), "--map", fx("nope.map")});
    CHECK(missing.code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
  }

  TEST_CASE("weaken command") {
    Outcome w = invoke({"weaken", "--low", fx("university/low.thy"), "--high", fx("university/high.thy"), "--map",
                        fx("university/mapping.map"), "--evidence", "diff(B,M)", "--phi", "grades(A,B,G)"});
    CHECK(w.code == 0);
    CHECK(contains(w.out, "concretization: diff(B,N)\n"));
    CHECK(contains(w.out, "weakening: diff(B,M) | diff(B,H)\n"));
    CHECK(contains(w.out, "definable: true\n"));
    CHECK(contains(w.out, "high-level: 0.25\n"));
    CHECK(contains(w.out, "low-level on weakening: 0.25\n"));

    Outcome bad = invoke({"weaken", "--low", fx("university/low.thy"), "--high", fx("university/high.thy"), "--map",
                          fx("university/mapping.map"), "--evidence", "~diff(B,M)"});
    CHECK(bad.code == 2);
  }

  TEST_CASE("derive command") {
    Outcome d = invoke({"derive", "--low", fx("university/low.thy"), "--space", fx("university/space.space")});
    CHECK(d.code == 0);
    CHECK(contains(d.out, "diff(B,H)"));
    Outcome j = invoke({"--format", "json", "derive", "--low", fx("university/low.thy"), "--space",
                        fx("university/space.space")});
    CHECK(j.code == 0);
    CHECK(contains(j.out, "\"candidates_tried\": 2"));
  }

  TEST_CASE("json reports round-trip for every fixture") {
    struct Case {
      std::string dir, low, high, map, expected;
    };
    for (const Case& c : std::vector<Case>{
             {"university", "low.thy", "high.thy", "mapping.map", "expected.json"},
             {"university", "low-hard.thy", "high-incomplete.thy", "mapping-incomplete.map", "expected-incomplete.json"},
             {"university", "low-hard.thy", "high-uniform.thy", "mapping-incomplete.map", "expected-uniform.json"},
             {"university", "low.thy", "high-forced.thy", "mapping-forced.map", "expected-forced.json"},
             {"courses", "low.thy", "high.thy", "mapping.map", "expected.json"},
             {"weak-exact", "low.thy", "high.thy", "mapping.map", "expected.json"},
             {"ten-valued", "low.thy", "high.thy", "mapping.map", "expected.json"}}) {
      INFO(c.dir, "/", c.high);
      auto args = check_args(c.dir, c.low, c.high, c.map);
      args.insert(args.begin(), {"--format", "json"});
      Outcome o = invoke(args);
      AbstractionReport got = parse_report(o.out);
      AbstractionReport want = parse_report(read_file(fixture_path(c.dir + "/" + c.expected)));
      CHECK(got == want);
      CHECK(parse_report(render_report(got, ReportFormat::Json)) == got);
    }
  }

  TEST_CASE("table rendering") {
    FixtureTriple u = university();
    std::string table = render_report(classify(u.high, u.low, u.m), ReportFormat::Table);
    std::size_t holds = 0;
    for (std::size_t at = table.find(" holds "); at != std::string::npos; at = table.find(" holds ", at + 1)) ++holds;
    CHECK(holds == 6);

    FixtureTriple forced = load_triple("university", "low.thy", "high-forced.thy", "mapping-forced.map");
    std::string failing = render_report(classify(forced.high, forced.low, forced.m), ReportFormat::Table);
    CHECK(contains(failing, "fails"));
    CHECK(contains(failing, "7/80"));
  }

  TEST_CASE("probability formatting") {
    CHECK(format_probability(Rational(1, 4)) == "0.25");
    CHECK(format_probability(Rational(0)) == "0");
    CHECK(format_probability(Rational(1)) == "1");
    CHECK(format_probability(Rational(1, 3)) == "1/3 (~0.333333333333)");
  }
}
