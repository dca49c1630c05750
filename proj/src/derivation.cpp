#include "absprob/derivation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "absprob/errors.hpp"
#include "absprob/solver.hpp"

namespace absprob {

namespace {

std::optional<Clause> clause_literals(const Formula& f) {
  if (auto l = as_literal(f)) return Clause{*l};
  if (f.kind() != FormulaKind::Or) return std::nullopt;
  Clause out;
  for (const auto& c : f.children()) {
    auto sub = clause_literals(c);
    if (!sub) return std::nullopt;
    out.insert(out.end(), sub->begin(), sub->end());
  }
  return out;
}

Formula clause_formula(const Clause& c) {
  std::vector<Formula> lits;
  for (const auto& l : c) lits.push_back(Formula::literal(l));
  return lits.size() == 1 ? lits[0] : Formula::disjunction(std::move(lits));
}

void add_all(WeightFn& out, const WeightedTheory& part, const std::function<bool(const GroundAtom&)>& keep) {
  auto resolved = part.weights.resolve(part.theory.universe());
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    const GroundAtom& a = part.theory.universe().atom(i);
    if (keep(a)) out.set(a, resolved[i].first, resolved[i].second);
  }
}

Vocabulary merge_vocabularies(const std::vector<const Vocabulary*>& parts, const char* level) {
  Vocabulary out;
  for (const auto* v : parts)
    for (const auto& s : v->sorts()) {
      if (const Sort* existing = out.find_sort(s.name)) {
        if (existing->constants != s.constants)
          throw PreconditionError(std::string(level) + " sort '" + s.name + "' differs between parts");
        continue;
      }
      out.add_sort(s.name, s.constants);
    }
  for (const auto* v : parts)
    for (const auto& p : v->predicates()) {
      if (out.find_predicate(p.name))
        throw PreconditionError(std::string(level) + " predicate '" + p.name + "' occurs in two parts");
      out.add_predicate(p.name, p.arg_sorts);
    }
  return out;
}

}  // namespace

Abstraction abstract_clause(const WeightedTheory& low, const Clause& lambda, const std::string& t) {
  if (lambda.empty()) throw PreconditionError("the empty clause is unsatisfiable");
  const Theory& theory = low.theory;
  const Vocabulary& vocab = theory.vocabulary();
  if (vocab.find_predicate(t)) throw PreconditionError("abstraction atom '" + t + "' is not fresh");

  std::set<GroundAtom> lambda_atoms;
  std::set<std::string> lambda_predicates;
  for (const auto& l : lambda) {
    theory.universe().index_of(l.atom);
    lambda_atoms.insert(l.atom);
    lambda_predicates.insert(l.atom.predicate);
  }
  for (const auto& a : theory.universe().atoms())
    if (lambda_predicates.count(a.predicate) && !lambda_atoms.count(a))
      throw PreconditionError("predicate '" + a.predicate + "' is only partly covered by the clause (missing " +
                              to_string(a) + ")");

  const std::set<Literal> lambda_set(lambda.begin(), lambda.end());
  const GroundAtom t_atom{t, {}};
  std::vector<Formula> sentences;
  for (const auto& s : theory.sentences()) {
    bool mentions = false;
    for (const auto& a : atoms_of(s))
      if (lambda_atoms.count(a)) mentions = true;
    if (!mentions) {
      sentences.push_back(s);
      continue;
    }
    auto lits = clause_literals(s);
    if (!lits) throw PreconditionError("sentence mentioning the clause's atoms is not a clause: " + to_string(s));
    std::set<Literal> present;
    Clause rest;
    for (const auto& l : *lits) {
      if (lambda_set.count(l)) present.insert(l);
      else if (lambda_atoms.count(l.atom))
        throw PreconditionError("clause atoms occur outside the clause in " + to_string(s));
      else rest.push_back(l);
    }
    if (present.size() != lambda_set.size())
      throw PreconditionError("sentence mentions only part of the clause: " + to_string(s));
    rest.push_back(Literal{t_atom, true});
    sentences.push_back(clause_formula(rest));
  }

  Vocabulary high_vocab;
  for (const auto& s : vocab.sorts()) high_vocab.add_sort(s.name, s.constants);
  for (const auto& p : vocab.predicates())
    if (!lambda_predicates.count(p.name)) high_vocab.add_predicate(p.name, p.arg_sorts);
  high_vocab.add_predicate(t, {});

  WeightFn wh;
  add_all(wh, low, [&](const GroundAtom& a) { return !lambda_atoms.count(a); });
  // mass of the λ atoms, and of the single assignment falsifying λ
  Rational total(1), falsifying(1);
  for (const auto& a : lambda_atoms) {
    total *= low.weights.weight(Literal{a, true}) + low.weights.weight(Literal{a, false});
  }
  bool tautology = false;
  for (const auto& l : lambda_set)
    if (lambda_set.count(l.complement())) tautology = true;
  if (tautology) {
    falsifying = 0;
  } else {
    for (const auto& l : lambda_set) falsifying *= low.weights.weight(l.complement());
  }
  wh.set(t_atom, total - falsifying, falsifying);

  auto high_ptr = std::make_shared<const Vocabulary>(std::move(high_vocab));
  std::vector<MappingEntry> entries;
  for (const auto& p : high_ptr->predicates()) {
    if (p.name == t) {
      entries.push_back({Formula::atom(t_atom), clause_formula(lambda)});
      continue;
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < p.arity(); ++i) terms.push_back(Term::var("x" + std::to_string(i)));
    Formula a = Formula::atom(p.name, terms);
    entries.push_back({a, a});
  }
  RefinementMapping m(high_ptr, theory.vocabulary_ptr(), std::move(entries));
  return Abstraction{WeightedTheory{Theory(high_ptr, std::move(sentences)), std::move(wh)}, std::move(m)};
}

Abstraction abstract_dichotomy(const WeightedTheory& low, const Formula& lambda, const std::string& t,
                               const std::optional<Formula>& gamma) {
  check_formula(lambda, low.theory.universe());
  Formula other = gamma ? *gamma : Formula::negation(lambda);
  check_formula(other, low.theory.universe());
  Formula partition = Formula::conjunction({Formula::disjunction({lambda, other}),
                                            Formula::negation(Formula::conjunction({lambda, other}))});
  if (!entails(low.theory, partition))
    throw PreconditionError("the two events do not partition the low-level theory's models");

  ProbabilitySpace space(low.theory, low.weights);
  Rational p = space.probability(lambda);

  Vocabulary vocab;
  vocab.add_predicate(t, {});
  auto high_ptr = std::make_shared<const Vocabulary>(std::move(vocab));
  const GroundAtom t_atom{t, {}};
  std::vector<Formula> sentences;
  if (entails(low.theory, lambda)) sentences.push_back(Formula::atom(t_atom));
  else if (entails(low.theory, Formula::negation(lambda))) sentences.push_back(Formula::negation(Formula::atom(t_atom)));

  WeightFn wh;
  wh.set(t_atom, p, 1 - p);
  RefinementMapping m(high_ptr, low.theory.vocabulary_ptr(), {{Formula::atom(t_atom), lambda}});
  return Abstraction{WeightedTheory{Theory(high_ptr, std::move(sentences)), std::move(wh)}, std::move(m)};
}

WeightFn derive_weights(const RefinementMapping& m, const WeightedTheory& low, const Theory& high) {
  if (high.universe().atoms() != m.high_universe().atoms())
    throw PreconditionError("mapping's high-level vocabulary does not match the high-level theory");
  ProbabilitySpace space(low.theory, low.weights);
  WeightFn wh;
  for (std::size_t i = 0; i < m.targets().size(); ++i) {
    Rational p = space.probability(m.target(i));
    wh.set(m.high_universe().atom(i), p, 1 - p);
  }
  return wh;
}

namespace {

// Non-tautological clauses over the universe with distinct atoms, by length,
// then lexicographically over (atom index, positive first).
std::vector<Formula> generate_clauses(const Universe& u, std::size_t max_length) {
  std::vector<Formula> out;
  const std::size_t n = u.size();
  for (std::size_t len = 1; len <= std::min(max_length, n); ++len) {
    std::vector<std::size_t> idx(len);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      for (std::size_t signs = 0; signs < (std::size_t{1} << len); ++signs) {
        Clause c;
        for (std::size_t k = 0; k < len; ++k) {
          bool negative = (signs >> (len - 1 - k)) & 1;
          c.push_back(Literal{u.atom(idx[k]), !negative});
        }
        out.push_back(clause_formula(c));
      }
      std::ptrdiff_t k = static_cast<std::ptrdiff_t>(len) - 1;
      while (k >= 0 && idx[k] == n - len + static_cast<std::size_t>(k)) --k;
      if (k < 0) break;
      ++idx[k];
      for (std::size_t j = static_cast<std::size_t>(k) + 1; j < len; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::vector<Formula> dedupe(const std::vector<Formula>& in) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (const auto& f : in)
    if (seen.insert(to_string(f)).second) out.push_back(f);
  return out;
}

// Index subsets of {0..n-1} of size ≤ k, by size then lexicographically.
void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  for (std::size_t size = 0; size <= std::min(n, k); ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (!visit(idx)) return;
      std::ptrdiff_t j = static_cast<std::ptrdiff_t>(size) - 1;
      while (j >= 0 && idx[j] == n - size + static_cast<std::size_t>(j)) --j;
      if (j < 0) break;
      ++idx[j];
      for (std::size_t q = static_cast<std::size_t>(j) + 1; q < size; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
}

class Searcher {
 public:
  Searcher(const WeightedTheory& low, const HypothesisSpace& space, const SearchOptions& options)
      : low_(low), space_(space), options_(options), low_space_(low.theory, low.weights) {
    if (!space.high_vocabulary) throw PreconditionError("hypothesis space has no high-level vocabulary");
    high_universe_ = space.high_vocabulary->universe();
    const Universe& lu = low.theory.universe();

    std::optional<std::vector<Formula>> generated;
    for (const auto& atom : high_universe_.atoms()) {
      std::vector<Formula> list;
      if (auto it = space.partial_mapping.find(atom); it != space.partial_mapping.end()) {
        list = {ground_formula(it->second, low.theory.vocabulary())};
      } else if (auto jt = space.mapping_candidates.find(atom); jt != space.mapping_candidates.end()) {
        for (const auto& f : jt->second) list.push_back(ground_formula(f, low.theory.vocabulary()));
      } else if (space.generated_clause_length > 0) {
        if (!generated) generated = generate_clauses(lu, space.generated_clause_length);
        list = *generated;
      }
      list = dedupe(list);
      if (list.empty()) throw PreconditionError("no mapping candidates for " + to_string(atom));
      for (const auto& f : list) check_formula(f, lu);
      candidates_.push_back(std::move(list));
    }
    for (const auto& a : space.partial_mapping)
      if (!high_universe_.contains(a.first))
        throw PreconditionError("partial mapping names unknown high-level atom " + to_string(a.first));
    for (const auto& [a, fs] : space.mapping_candidates)
      if (!high_universe_.contains(a))
        throw PreconditionError("mapping candidates name unknown high-level atom " + to_string(a));

    for (const auto& f : space.partial_theory) fixed_.push_back(ground_formula(f, *space.high_vocabulary));
    std::vector<Formula> pool;
    if (!space.theory_candidates.empty()) {
      for (const auto& f : space.theory_candidates) pool.push_back(ground_formula(f, *space.high_vocabulary));
    } else {
      pool = generate_clauses(high_universe_, space.theory_bound.max_clause_length);
    }
    std::set<std::string> fixed_keys;
    for (const auto& f : fixed_) fixed_keys.insert(to_string(f));
    for (const auto& f : dedupe(pool))
      if (!fixed_keys.count(to_string(f))) pool_.push_back(f);
    if (fixed_.size() > space.theory_bound.max_sentences)
      throw PreconditionError("partial theory exceeds the sentence bound");
  }

  void run(const std::function<bool(DerivationResult)>& on_success) {
    std::vector<std::size_t> choice(candidates_.size(), 0);
    bool stop = false;
    while (!stop) {
      stop = !try_mapping(choice, on_success);
      if (stop) break;
      // odometer, first atom most significant
      std::ptrdiff_t k = static_cast<std::ptrdiff_t>(choice.size()) - 1;
      while (k >= 0 && ++choice[k] == candidates_[k].size()) choice[k--] = 0;
      if (k < 0) break;
    }
  }

  std::size_t tried() const { return tried_; }

 private:
  const Rational& low_probability(const Formula& f) {
    std::string key = to_string(f);
    auto it = low_cache_.find(key);
    if (it == low_cache_.end()) it = low_cache_.emplace(key, low_space_.probability(f)).first;
    return it->second;
  }

  bool budget_left() const { return options_.max_candidates == 0 || tried_ < options_.max_candidates; }

  // Returns false to stop the search.
  bool try_mapping(const std::vector<std::size_t>& choice, const std::function<bool(DerivationResult)>& on_success) {
    std::vector<MappingEntry> entries;
    WeightFn wh;
    for (std::size_t i = 0; i < choice.size(); ++i) {
      const Formula& target = candidates_[i][choice[i]];
      entries.push_back({Formula::atom(high_universe_.atom(i)), target});
      const Rational& p = low_probability(target);
      wh.set(high_universe_.atom(i), p, 1 - p);
    }
    RefinementMapping m(space_.high_vocabulary, low_.theory.vocabulary_ptr(), std::move(entries));
    const bool separable = is_separable(m);

    bool keep_going = true;
    const std::size_t room = space_.theory_bound.max_sentences - fixed_.size();
    for_each_subset(pool_.size(), room, [&](const std::vector<std::size_t>& subset) {
      if (!budget_left()) {
        keep_going = false;
        return false;
      }
      ++tried_;
      std::vector<Formula> sentences = fixed_;
      for (auto i : subset) sentences.push_back(pool_[i]);
      WeightedTheory high{Theory(space_.high_vocabulary, std::move(sentences)), wh};
      if (!passes(high, m, separable)) return true;
      AbstractionReport report = classify(high, low_, m, options_.check);
      AbstractionClass target =
          space_.target == TargetClass::WeakExact ? AbstractionClass::WeakExact : AbstractionClass::WeightedExact;
      if (!report[target].holds()) return true;
      DerivationResult r;
      r.abstraction = Abstraction{high, m};
      r.report = report;
      r.candidates_tried = tried_;
      keep_going = on_success(std::move(r));
      return keep_going;
    });
    return keep_going && budget_left();
  }

  bool passes(const WeightedTheory& high, const RefinementMapping& m, bool separable) {
    std::optional<ProbabilitySpace> hs;
    try {
      hs.emplace(high.theory, high.weights);
    } catch (const ZeroPartition&) {
      return false;
    }
    // (★★): literal probabilities must match whatever the mapping
    for (std::size_t i = 0; i < high_universe_.size(); ++i)
      if (hs->probability(Formula::atom(high_universe_.atom(i))) != low_probability(m.target(i))) return false;

    const bool within_cap = high.theory.universe().size() <= options_.check.cap;
    try {
      if (space_.target == TargetClass::WeightedExact) {
        if (separable) {
          if (!sufficient_sound(high.theory, low_.theory, m)) return false;
          if (!sufficient_complete(high.theory, low_.theory, m)) return false;
        } else {
          if (!check_sound(high.theory, low_.theory, m).holds()) return false;
          if (!within_cap) return false;
          if (!check_complete(high.theory, low_.theory, m, options_.check).holds()) return false;
        }
        if (within_cap && !check_complete(high.theory, low_.theory, m, options_.check).holds()) return false;
      }
      // literal agreement alone does not settle (★); confirm when enumerable
      if (within_cap) return check_weak_exact(high, low_, m, options_.check).holds();
      return separable;
    } catch (const CapExceeded&) {
      return false;
    }
  }

  const WeightedTheory& low_;
  const HypothesisSpace& space_;
  SearchOptions options_;
  ProbabilitySpace low_space_;
  Universe high_universe_;
  std::vector<std::vector<Formula>> candidates_;
  std::vector<Formula> fixed_;
  std::vector<Formula> pool_;
  std::map<std::string, Rational> low_cache_;
  std::size_t tried_ = 0;
};

}  // namespace

DerivationResult search(const WeightedTheory& low, const HypothesisSpace& space, const SearchOptions& options) {
  Searcher s(low, space, options);
  DerivationResult result;
  s.run([&](DerivationResult r) {
    result = std::move(r);
    return false;
  });
  result.candidates_tried = s.tried();
  return result;
}

std::vector<DerivationResult> search_all(const WeightedTheory& low, const HypothesisSpace& space,
                                         const SearchOptions& options) {
  Searcher s(low, space, options);
  std::vector<DerivationResult> out;
  s.run([&](DerivationResult r) {
    out.push_back(std::move(r));
    return true;
  });
  return out;
}

std::vector<Theory> decompose(const Theory& low) {
  const auto& sentences = low.sentences();
  std::vector<std::size_t> parent(sentences.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::optional<std::size_t>> owner(low.universe().size());
  for (std::size_t s = 0; s < sentences.size(); ++s)
    for (const auto& a : atoms_of(sentences[s])) {
      auto& o = owner[low.universe().index_of(a)];
      if (o) parent[find(s)] = find(*o);
      else o = s;
    }
  std::vector<std::vector<Formula>> groups;
  std::map<std::size_t, std::size_t> group_of;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    auto [it, fresh] = group_of.emplace(find(s), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(sentences[s]);
  }
  std::vector<Theory> out;
  for (auto& g : groups) out.emplace_back(low.vocabulary_ptr(), std::move(g));
  return out;
}

WeightedTheory conjoin(const std::vector<WeightedTheory>& parts) {
  std::vector<const Vocabulary*> vocabs;
  for (const auto& p : parts) vocabs.push_back(&p.theory.vocabulary());
  auto vocab = std::make_shared<const Vocabulary>(merge_vocabularies(vocabs, "high-level"));
  std::vector<Formula> sentences;
  WeightFn w;
  for (const auto& p : parts) {
    sentences.insert(sentences.end(), p.theory.sentences().begin(), p.theory.sentences().end());
    add_all(w, p, [](const GroundAtom&) { return true; });
  }
  return WeightedTheory{Theory(vocab, std::move(sentences)), std::move(w)};
}

Abstraction compose(const std::vector<Abstraction>& parts) {
  if (parts.empty()) throw PreconditionError("nothing to compose");
  std::vector<WeightedTheory> highs;
  std::vector<const Vocabulary*> lows;
  for (const auto& p : parts) {
    highs.push_back(p.high);
    lows.push_back(&p.mapping.low_vocabulary());
  }
  WeightedTheory high = conjoin(highs);
  auto low_vocab = std::make_shared<const Vocabulary>(merge_vocabularies(lows, "low-level"));
  std::vector<MappingEntry> entries;
  for (const auto& p : parts)
    for (std::size_t i = 0; i < p.mapping.targets().size(); ++i)
      entries.push_back({Formula::atom(p.mapping.high_universe().atom(i)), p.mapping.target(i)});
  RefinementMapping m(high.theory.vocabulary_ptr(), low_vocab, std::move(entries));
  return Abstraction{std::move(high), std::move(m)};
}

}  // namespace absprob
