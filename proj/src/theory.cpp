#include "absprob/theory.hpp"

#include <map>

#include "absprob/errors.hpp"

namespace absprob {

namespace {

using Env = std::map<std::string, std::string>;

Term resolve(const Term& t, const Env& env) {
  if (!t.variable) return t;
  auto it = env.find(t.name);
  if (it == env.end()) throw WellFormednessError("unbound variable '" + t.name + "'");
  return Term::constant(it->second);
}

Formula ground_rec(const Formula& f, const Vocabulary& vocab, Env& env) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom: {
      std::vector<Term> terms;
      for (const auto& t : f.terms()) terms.push_back(resolve(t, env));
      Formula a = Formula::atom(f.predicate(), std::move(terms));
      vocab.check_atom(a.ground_atom());
      return a;
    }
    case FormulaKind::Eq: {
      Term l = resolve(f.terms()[0], env);
      Term r = resolve(f.terms()[1], env);
      return l.name == r.name ? Formula::top() : Formula::bottom();
    }
    case FormulaKind::Not: return Formula::negation(ground_rec(f.child(0), vocab, env));
    case FormulaKind::Implies:
      return Formula::implies(ground_rec(f.child(0), vocab, env), ground_rec(f.child(1), vocab, env));
    case FormulaKind::Iff:
      return Formula::iff(ground_rec(f.child(0), vocab, env), ground_rec(f.child(1), vocab, env));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(ground_rec(c, vocab, env));
      return f.kind() == FormulaKind::And ? Formula::conjunction(std::move(parts))
                                          : Formula::disjunction(std::move(parts));
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const Sort* sort = vocab.find_sort(f.sort());
      if (!sort) throw WellFormednessError("unknown sort '" + f.sort() + "'");
      std::optional<std::string> saved;
      if (auto it = env.find(f.var()); it != env.end()) saved = it->second;
      std::vector<Formula> parts;
      for (const auto& c : sort->constants) {
        env[f.var()] = c;
        parts.push_back(ground_rec(f.body(), vocab, env));
      }
      if (saved) env[f.var()] = *saved;
      else env.erase(f.var());
      return f.kind() == FormulaKind::Forall ? Formula::conjunction(std::move(parts))
                                             : Formula::disjunction(std::move(parts));
    }
  }
  return f;
}

bool needs_rewrite(const Formula& f) {
  if (f.kind() == FormulaKind::Eq || !f.is_ground()) return true;
  for (const auto& c : f.children())
    if (needs_rewrite(c)) return true;
  return false;
}

void check_rec(const Formula& f, const Vocabulary& vocab) {
  if (f.kind() == FormulaKind::Atom) {
    vocab.check_atom(f.ground_atom());
    return;
  }
  for (const auto& c : f.children()) check_rec(c, vocab);
}

void collect_free(const Formula& f, const Vocabulary& vocab, std::vector<std::string>& bound,
                  std::vector<std::pair<std::string, std::string>>& out) {
  auto is_bound = [&](const std::string& v) {
    for (const auto& b : bound)
      if (b == v) return true;
    for (const auto& [name, sort] : out)
      if (name == v) return true;
    return false;
  };
  switch (f.kind()) {
    case FormulaKind::Atom: {
      const PredicateDecl* p = vocab.find_predicate(f.predicate());
      if (!p) throw WellFormednessError("unknown predicate '" + f.predicate() + "'");
      if (p->arity() != f.terms().size())
        throw WellFormednessError("predicate '" + f.predicate() + "' expects " +
                                  std::to_string(p->arity()) + " arguments, got " +
                                  std::to_string(f.terms().size()));
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        const Term& t = f.terms()[i];
        if (t.variable && !is_bound(t.name)) out.emplace_back(t.name, p->arg_sorts[i]);
      }
      return;
    }
    case FormulaKind::Eq:
      for (const auto& t : f.terms())
        if (t.variable && !is_bound(t.name))
          throw WellFormednessError("variable '" + t.name + "' has no sort (occurs only in an equality)");
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      bound.push_back(f.var());
      collect_free(f.body(), vocab, bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : f.children()) collect_free(c, vocab, bound, out);
  }
}

}  // namespace

Theory::Theory(std::shared_ptr<const Vocabulary> vocabulary, std::vector<Formula> sentences)
    : vocabulary_(std::move(vocabulary)),
      universe_(std::make_shared<const Universe>(vocabulary_->universe())),
      sentences_(std::move(sentences)) {
  for (const auto& s : sentences_) {
    if (!s.is_ground()) throw WellFormednessError("sentence is not ground: " + to_string(s));
    check_rec(s, *vocabulary_);
  }
}

Theory::Theory(Vocabulary vocabulary, std::vector<Formula> sentences)
    : Theory(std::make_shared<const Vocabulary>(std::move(vocabulary)), std::move(sentences)) {}

Theory Theory::with(std::vector<Formula> extra) const {
  std::vector<Formula> all = sentences_;
  for (auto& f : extra) all.push_back(std::move(f));
  return Theory(vocabulary_, std::move(all));
}

std::vector<std::pair<std::string, std::string>> free_variables(const Formula& f,
                                                                const Vocabulary& vocabulary) {
  std::vector<std::string> bound;
  std::vector<std::pair<std::string, std::string>> out;
  collect_free(f, vocabulary, bound, out);
  return out;
}

Formula ground_formula(const Formula& f, const Vocabulary& vocabulary) {
  if (!needs_rewrite(f)) {
    check_rec(f, vocabulary);
    return f;
  }
  Env env;
  return simplify(ground_rec(f, vocabulary, env));
}

Theory ground_theory(const TheorySpec& spec) {
  auto vocab = std::make_shared<const Vocabulary>(spec.vocabulary);
  std::vector<Formula> ground;
  for (const auto& s : spec.sentences) {
    Formula closed = s;
    auto free = free_variables(s, *vocab);
    for (auto it = free.rbegin(); it != free.rend(); ++it)
      closed = Formula::forall(it->first, it->second, closed);
    ground.push_back(ground_formula(closed, *vocab));
  }
  return Theory(vocab, std::move(ground));
}

void check_formula(const Formula& f, const Universe& universe) {
  if (!f.is_ground()) throw WellFormednessError("formula is not ground: " + to_string(f));
  for (const auto& a : atoms_of(f)) universe.index_of(a);
}

}  // namespace absprob
