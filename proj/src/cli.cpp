#include "absprob/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "absprob/abstraction.hpp"
#include "absprob/derivation.hpp"
#include "absprob/document.hpp"
#include "absprob/errors.hpp"
#include "absprob/evidence.hpp"
#include "absprob/report.hpp"
#include "absprob/solver.hpp"
#include "absprob/wmc.hpp"

namespace absprob {

namespace {

enum class Mode { Rational, Float };

struct Options {
  Mode mode = Mode::Rational;
  std::uint64_t seed = 1;
  std::size_t cap = default_enumeration_cap();
  std::string format = "table";
};

ReportFormat report_format(const Options& o) { return o.format == "json" ? ReportFormat::Json : ReportFormat::Table; }

std::string format_float(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

struct Loaded {
  WeightedTheory low;
  WeightedTheory high;
  RefinementMapping mapping;
};

Loaded load_abstraction(const std::string& low, const std::string& high, const std::string& map) {
  WeightedTheory l = load_theory(low).build();
  WeightedTheory h = load_theory(high).build();
  RefinementMapping m(h.theory.vocabulary_ptr(), l.theory.vocabulary_ptr(),
                      load_mapping(map, h.theory.vocabulary()));
  return Loaded{std::move(l), std::move(h), std::move(m)};
}

Formula query_formula(const std::string& text, const Theory& theory) {
  Formula f = ground_formula(parse_infix(text), theory.vocabulary());
  check_formula(f, theory.universe());
  return f;
}

int cmd_ground(const std::string& path, bool models, const Options& o, std::ostream& out) {
  WeightedTheory t = load_theory(path).build();
  for (const auto& s : t.theory.sentences()) out << to_string(s) << "\n";
  if (models) {
    std::size_t count = 0;
    for_each_model(t.theory, Formula::top(), [&](const Model& m) {
      out << "model " << ++count << ": " << to_string(model_formula(m)) << "\n";
      return true;
    }, o.cap);
    out << count << " model(s)\n";
  }
  return 0;
}

int cmd_wmc(const std::string& path, const std::string& phi, const Options& o, std::ostream& out) {
  WeightedTheory t = load_theory(path).build();
  Formula extra = phi.empty() ? Formula::top() : query_formula(phi, t.theory);
  if (o.mode == Mode::Float) out << format_float(wmc_float(t.theory, t.weights, extra)) << "\n";
  else out << format_probability(wmc(t.theory, t.weights, extra)) << "\n";
  return 0;
}

int cmd_query(const std::string& path, const std::string& phi, const std::string& evidence, const Options& o,
              std::ostream& out) {
  WeightedTheory t = load_theory(path).build();
  Formula f = query_formula(phi, t.theory);
  std::optional<Formula> e;
  if (!evidence.empty()) e = query_formula(evidence, t.theory);
  if (o.mode == Mode::Float) {
    double p = e ? conditional_float(f, *e, t.theory, t.weights) : probability_float(f, t.theory, t.weights);
    out << format_float(p) << "\n";
  } else {
    Rational p = e ? conditional(f, *e, t.theory, t.weights) : probability(f, t.theory, t.weights);
    out << format_probability(p) << "\n";
  }
  return 0;
}

int cmd_check(const Loaded& a, const std::vector<AbstractionClass>& gate, const Options& o, std::ostream& out) {
  AbstractionReport report = classify(a.high, a.low, a.mapping, CheckOptions{o.cap});
  out << render_report(report, report_format(o));
  for (AbstractionClass c : gate)
    if (!report[c].holds()) return 1;
  return 0;
}

int cmd_weaken(const Loaded& a, const std::string& evidence, const std::string& phi, bool verify, const Options& o,
               std::ostream& out) {
  Evidence e = Evidence::from_formula(parse_infix(evidence), a.low.theory.universe());
  Formula concretization = concretize(a.mapping, e);
  Formula weakening = weaken(a.mapping, e);
  bool definable = is_definable(a.mapping, e);
  out << "concretization: " << to_string(concretization) << "\n"
      << "weakening: " << to_string(weakening) << "\n"
      << "definable: " << (definable ? "true" : "false") << "\n";
  if (phi.empty()) return definable ? 0 : 1;
  if (!definable) {
    out << "query refused: evidence does not entail its weakening\n";
    return 1;
  }
  Formula f = query_formula(phi, a.high.theory);
  HighLevelAnswer answer = query_high_level(f, e, a.high, a.low, a.mapping, verify);
  out << "mode: " << (answer.mode == EvidenceMode::Exact ? "exact" : "weakened") << "\n";
  if (o.mode == Mode::Float) {
    out << "high-level: " << format_float(conditional_float(f, concretization, a.high.theory, a.high.weights)) << "\n"
        << "low-level on weakening: "
        << format_float(conditional_float(apply(a.mapping, f), weakening, a.low.theory, a.low.weights)) << "\n";
  } else {
    out << "high-level: " << format_probability(answer.probability) << "\n"
        << "low-level on weakening: "
        << format_probability(conditional(apply(a.mapping, f), weakening, a.low.theory, a.low.weights)) << "\n";
  }
  return 0;
}

int cmd_derive(const std::string& low_path, const std::string& space_path, bool all, std::size_t max_candidates,
               const Options& o, std::ostream& out) {
  WeightedTheory low = load_theory(low_path).build();
  HypothesisSpace space = load_space(space_path);
  SearchOptions options{CheckOptions{o.cap}, max_candidates};
  if (!all) {
    DerivationResult r = search(low, space, options);
    out << render_derivation(r, report_format(o));
    return r.success() ? 0 : 1;
  }
  auto results = search_all(low, space, options);
  if (report_format(o) == ReportFormat::Json) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& r : results) doc.push_back(nlohmann::ordered_json::parse(render_derivation(r, ReportFormat::Json)));
    out << doc.dump(2) << "\n";
  } else {
    out << results.size() << " successful candidate(s)\n";
    for (std::size_t i = 0; i < results.size(); ++i)
      out << "--- candidate " << i + 1 << "\n" << render_derivation(results[i], ReportFormat::Table);
  }
  return results.empty() ? 1 : 0;
}

// Random CNF instances counted by both engines.
int cmd_differential(std::size_t cases, std::size_t max_atoms, const Options& o, std::ostream& out) {
  std::mt19937_64 rng(o.seed);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < cases; ++k) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_atoms))(rng);
    Vocabulary vocab;
    for (std::size_t i = 0; i < n; ++i) vocab.add_predicate("x" + std::to_string(i), {});
    std::vector<Formula> sentences;
    std::size_t clauses = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
    for (std::size_t c = 0; c < clauses; ++c) {
      std::vector<Formula> lits;
      std::size_t len = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      for (std::size_t j = 0; j < len; ++j) {
        Formula a = Formula::atom(GroundAtom{"x" + std::to_string(rng() % n), {}});
        lits.push_back(rng() % 2 ? a : Formula::negation(a));
      }
      sentences.push_back(Formula::disjunction(std::move(lits)));
    }
    Theory theory(std::move(vocab), std::move(sentences));
    WeightFn w;
    for (const auto& a : theory.universe().atoms())
      w.set(a, Rational(static_cast<long>(rng() % 10), 9), Rational(static_cast<long>(rng() % 10), 9));
    Rational fast = wmc(theory, w);
    Rational slow = wmc_enumerate(theory, w);
    if (fast != slow) {
      ++mismatches;
      out << "mismatch on instance " << k << ": " << to_string(fast) << " vs " << to_string(slow) << "\n";
    }
  }
  out << cases << " instance(s), " << mismatches << " mismatch(es), seed " << o.seed << "\n";
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted model counting and abstraction checking over ground relational theories", "absprob"};
  app.require_subcommand(1);
  Options o;
  std::string mode = "rational";
  app.add_option("--mode", mode, "Arithmetic: rational (exact) or float")
      ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--seed", o.seed, "Seed for randomized commands");
  app.add_option("--cap", o.cap, "Enumeration cap (atoms)");
  app.add_option("--format", o.format, "Report format: table or json")->check(CLI::IsMember({"table", "json"}));

  std::string theory, phi, evidence, low, high, map, space;
  bool models = false, weighted = false, exact = false, weak = false, verify = false, all = false;
  std::size_t max_candidates = 0, cases = 100, atoms = 12;

  auto* ground = app.add_subcommand("ground", "Print the grounded sentences of a theory");
  ground->add_option("theory", theory, "Theory document")->required();
  ground->add_flag("--models", models, "Also list every model");

  auto* wmc_cmd = app.add_subcommand("wmc", "Weighted model count of a theory");
  wmc_cmd->add_option("theory", theory, "Theory document")->required();
  wmc_cmd->add_option("--phi", phi, "Count only models of this formula as well");

  auto* query = app.add_subcommand("query", "Probability of a formula, optionally given evidence");
  query->add_option("theory", theory, "Theory document")->required();
  query->add_option("--phi", phi, "Query formula")->required();
  query->add_option("--evidence", evidence, "Evidence formula");

  auto* check = app.add_subcommand("check", "Classify a high-level theory as an abstraction of a low-level one");
  check->add_option("--low", low, "Low-level theory")->required();
  check->add_option("--high", high, "High-level theory")->required();
  check->add_option("--map", map, "Refinement mapping")->required();
  check->add_flag("--weighted", weighted, "Gate the exit status on weighted soundness and completeness");
  check->add_flag("--exact", exact, "Gate the exit status on weighted exactness");
  check->add_flag("--weak", weak, "Gate the exit status on weak exactness");

  auto* weaken_cmd = app.add_subcommand("weaken", "Abstract a low-level evidence literal");
  weaken_cmd->add_option("--low", low, "Low-level theory")->required();
  weaken_cmd->add_option("--high", high, "High-level theory")->required();
  weaken_cmd->add_option("--map", map, "Refinement mapping")->required();
  weaken_cmd->add_option("--evidence", evidence, "Low-level literal")->required();
  weaken_cmd->add_option("--phi", phi, "High-level query to answer given the evidence");
  weaken_cmd->add_flag("--verify", verify, "Verify weighted exactness before answering");

  auto* derive = app.add_subcommand("derive", "Search a hypothesis space for an abstraction");
  derive->add_option("--low", low, "Low-level theory")->required();
  derive->add_option("--space", space, "Hypothesis space document")->required();
  derive->add_flag("--all", all, "List every successful candidate");
  derive->add_option("--max-candidates", max_candidates, "Stop after this many candidates (0 = no limit)");

  auto* diff = app.add_subcommand("differential", "Compare both counting engines on random instances");
  diff->add_option("--cases", cases, "Number of instances");
  diff->add_option("--atoms", atoms, "Maximum atoms per instance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  o.mode = mode == "float" ? Mode::Float : Mode::Rational;

  try {
    if (*ground) return cmd_ground(theory, models, o, out);
    if (*wmc_cmd) return cmd_wmc(theory, phi, o, out);
    if (*query) return cmd_query(theory, phi, evidence, o, out);
    if (*check) {
      std::vector<AbstractionClass> gate;
      if (weighted) gate.insert(gate.end(), {AbstractionClass::WeightedSound, AbstractionClass::WeightedComplete});
      if (exact) gate.push_back(AbstractionClass::WeightedExact);
      if (weak) gate.push_back(AbstractionClass::WeakExact);
      if (gate.empty()) gate = {AbstractionClass::Sound, AbstractionClass::Complete};
      return cmd_check(load_abstraction(low, high, map), gate, o, out);
    }
    if (*weaken_cmd) return cmd_weaken(load_abstraction(low, high, map), evidence, phi, verify, o, out);
    if (*derive) return cmd_derive(low, space, all, max_candidates, o, out);
    if (*diff) return cmd_differential(cases, atoms, o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace absprob
