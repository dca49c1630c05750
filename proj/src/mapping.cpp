#include "absprob/mapping.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "absprob/errors.hpp"
#include "absprob/theory.hpp"

namespace absprob {

namespace {

// Binds pattern variables against a ground atom; nullopt when it does not match.
std::optional<std::map<std::string, std::string>> match(const Formula& pattern, const GroundAtom& atom) {
  if (pattern.predicate() != atom.predicate || pattern.terms().size() != atom.args.size()) return std::nullopt;
  std::map<std::string, std::string> env;
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const Term& t = pattern.terms()[i];
    if (!t.variable) {
      if (t.name != atom.args[i]) return std::nullopt;
      continue;
    }
    auto [it, fresh] = env.emplace(t.name, atom.args[i]);
    if (!fresh && it->second != atom.args[i]) return std::nullopt;
  }
  return env;
}

}  // namespace

RefinementMapping::RefinementMapping(std::shared_ptr<const Vocabulary> high, std::shared_ptr<const Vocabulary> low,
                                     std::vector<MappingEntry> entries)
    : high_(std::move(high)),
      low_(std::move(low)),
      high_universe_(std::make_shared<const Universe>(high_->universe())),
      low_universe_(std::make_shared<const Universe>(low_->universe())),
      entries_(std::move(entries)) {
  const std::size_t n = high_universe_->size();
  std::vector<std::optional<std::size_t>> ground_source(n), template_source(n);

  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const Formula& pattern = entries_[e].pattern;
    if (pattern.kind() != FormulaKind::Atom)
      throw WellFormednessError("mapping pattern must be an atom: " + to_string(pattern));
    const PredicateDecl* decl = high_->find_predicate(pattern.predicate());
    if (!decl) throw WellFormednessError("mapping names unknown high-level predicate '" + pattern.predicate() + "'");
    if (decl->arity() != pattern.terms().size())
      throw WellFormednessError("mapping pattern " + to_string(pattern) + " has wrong arity");
    if (pattern.is_ground()) high_->check_atom(pattern.ground_atom());

    bool matched = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!match(pattern, high_universe_->atom(i))) continue;
      matched = true;
      auto& slot = pattern.is_ground() ? ground_source[i] : template_source[i];
      if (slot)
        throw WellFormednessError("high-level atom " + to_string(high_universe_->atom(i)) +
                                  " is covered by two mapping entries");
      slot = e;
    }
    if (!matched && !pattern.is_ground())
      throw WellFormednessError("mapping template " + to_string(pattern) + " matches no high-level atom");
  }

  targets_.reserve(n);
  target_atoms_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GroundAtom& atom = high_universe_->atom(i);
    auto source = ground_source[i] ? ground_source[i] : template_source[i];
    if (!source) throw WellFormednessError("high-level atom " + to_string(atom) + " is unmapped");
    const MappingEntry& entry = entries_[*source];
    Formula target = entry.target;
    const auto env = *match(entry.pattern, atom);
    for (const auto& [var, constant] : env) target = substitute(target, var, constant);
    try {
      target = ground_formula(target, *low_);
    } catch (const WellFormednessError& err) {
      throw WellFormednessError("target of " + to_string(atom) + ": " + err.what());
    }
    std::vector<std::size_t> idx;
    for (const auto& a : atoms_of(target)) idx.push_back(low_universe_->index_of(a));
    std::sort(idx.begin(), idx.end());
    targets_.push_back(std::move(target));
    target_atoms_.push_back(std::move(idx));
  }
}

RefinementMapping RefinementMapping::identity(std::shared_ptr<const Vocabulary> vocabulary) {
  std::vector<MappingEntry> entries;
  for (const auto& p : vocabulary->predicates()) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < p.arity(); ++i) terms.push_back(Term::var("x" + std::to_string(i)));
    Formula a = Formula::atom(p.name, terms);
    entries.push_back({a, a});
  }
  return RefinementMapping(vocabulary, vocabulary, std::move(entries));
}

const Formula& RefinementMapping::target(const GroundAtom& atom) const {
  return targets_[high_universe_->index_of(atom)];
}

Formula apply(const RefinementMapping& m, const Formula& phi) {
  switch (phi.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return phi;
    case FormulaKind::Atom: return m.target(phi.ground_atom());
    case FormulaKind::Eq: {
      const auto& t = phi.terms();
      if (t[0].variable || t[1].variable) throw WellFormednessError("formula is not ground: " + to_string(phi));
      return t[0].name == t[1].name ? Formula::top() : Formula::bottom();
    }
    case FormulaKind::Not: return Formula::negation(apply(m, phi.child(0)));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      parts.reserve(phi.children().size());
      for (const auto& c : phi.children()) parts.push_back(apply(m, c));
      return phi.kind() == FormulaKind::And ? Formula::conjunction(std::move(parts))
                                            : Formula::disjunction(std::move(parts));
    }
    case FormulaKind::Implies:
    case FormulaKind::Iff: return apply(m, expand_connectives(phi));
    case FormulaKind::Forall:
    case FormulaKind::Exists: throw WellFormednessError("formula is not ground: " + to_string(phi));
  }
  return phi;
}

bool is_separable(const RefinementMapping& m) {
  std::vector<int> owner(m.low_universe().size(), -1);
  for (std::size_t i = 0; i < m.targets().size(); ++i)
    for (std::size_t a : m.target_atoms(i)) {
      if (owner[a] >= 0 && owner[a] != static_cast<int>(i)) return false;
      owner[a] = static_cast<int>(i);
    }
  return true;
}

Model induced_profile(const RefinementMapping& m, const Model& low) {
  Model high(m.high_universe_ptr());
  for (std::size_t i = 0; i < m.targets().size(); ++i) high.set(i, evaluate(low, m.target(i)));
  return high;
}

bool is_isomorphic(const Model& high, const Model& low, const RefinementMapping& m) {
  return high == induced_profile(m, low);
}

}  // namespace absprob
