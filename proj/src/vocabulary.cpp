#include "absprob/vocabulary.hpp"

#include <cstddef>
#include <unordered_set>

#include "absprob/errors.hpp"

namespace absprob {

std::string to_string(const GroundAtom& atom) {
  std::string out = atom.predicate;
  if (atom.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ',';
    out += atom.args[i];
  }
  out += ')';
  return out;
}

std::string to_string(const Literal& literal) {
  return literal.positive ? to_string(literal.atom) : "~" + to_string(literal.atom);
}

std::size_t GroundAtomHash::operator()(const GroundAtom& atom) const noexcept {
  std::hash<std::string> h;
  std::size_t seed = h(atom.predicate);
  for (const auto& a : atom.args) seed ^= h(a) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

Universe::Universe(std::vector<GroundAtom> atoms) : atoms_(std::move(atoms)) {
  index_.reserve(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!index_.emplace(atoms_[i], i).second)
      throw WellFormednessError("duplicate atom " + to_string(atoms_[i]) + " in universe");
  }
}

std::optional<std::size_t> Universe::find(const GroundAtom& atom) const {
  auto it = index_.find(atom);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Universe::index_of(const GroundAtom& atom) const {
  auto i = find(atom);
  if (!i) throw WellFormednessError("atom " + to_string(atom) + " is outside the universe");
  return *i;
}

void Vocabulary::add_sort(std::string name, std::vector<std::string> constants) {
  if (sort_index_.count(name)) throw WellFormednessError("duplicate sort '" + name + "'");
  std::unordered_set<std::string> seen;
  for (const auto& c : constants)
    if (!seen.insert(c).second)
      throw WellFormednessError("duplicate constant '" + c + "' in sort '" + name + "'");
  sort_index_.emplace(name, sorts_.size());
  sorts_.push_back(Sort{std::move(name), std::move(constants)});
}

void Vocabulary::add_predicate(std::string name, std::vector<std::string> arg_sorts) {
  if (predicate_index_.count(name)) throw WellFormednessError("duplicate predicate '" + name + "'");
  for (const auto& s : arg_sorts)
    if (!find_sort(s))
      throw WellFormednessError("predicate '" + name + "' uses undeclared sort '" + s + "'");
  predicate_index_.emplace(name, predicates_.size());
  predicates_.push_back(PredicateDecl{std::move(name), std::move(arg_sorts)});
}

const Sort* Vocabulary::find_sort(std::string_view name) const {
  auto it = sort_index_.find(std::string(name));
  return it == sort_index_.end() ? nullptr : &sorts_[it->second];
}

const PredicateDecl* Vocabulary::find_predicate(std::string_view name) const {
  auto it = predicate_index_.find(std::string(name));
  return it == predicate_index_.end() ? nullptr : &predicates_[it->second];
}

bool Vocabulary::sort_has(std::string_view sort, std::string_view constant) const {
  const Sort* s = find_sort(sort);
  if (!s) return false;
  for (const auto& c : s->constants)
    if (c == constant) return true;
  return false;
}

void Vocabulary::check_atom(const GroundAtom& atom) const {
  const PredicateDecl* p = find_predicate(atom.predicate);
  if (!p) throw WellFormednessError("unknown predicate '" + atom.predicate + "'");
  if (p->arity() != atom.args.size())
    throw WellFormednessError("predicate '" + atom.predicate + "' expects " +
                              std::to_string(p->arity()) + " arguments, got " +
                              std::to_string(atom.args.size()));
  for (std::size_t i = 0; i < atom.args.size(); ++i)
    if (!sort_has(p->arg_sorts[i], atom.args[i]))
      throw WellFormednessError("constant '" + atom.args[i] + "' is not in sort '" +
                                p->arg_sorts[i] + "' (argument " + std::to_string(i + 1) +
                                " of " + atom.predicate + ")");
}

Universe Vocabulary::universe() const {
  std::vector<GroundAtom> atoms;
  for (const auto& p : predicates_) {
    std::vector<const Sort*> sorts;
    bool empty = false;
    for (const auto& s : p.arg_sorts) {
      sorts.push_back(find_sort(s));
      if (sorts.back()->constants.empty()) empty = true;
    }
    if (empty) continue;
    // odometer over argument tuples, last argument fastest
    std::vector<std::size_t> pos(sorts.size(), 0);
    while (true) {
      GroundAtom a{p.name, {}};
      for (std::size_t i = 0; i < sorts.size(); ++i) a.args.push_back(sorts[i]->constants[pos[i]]);
      atoms.push_back(std::move(a));
      std::ptrdiff_t k = static_cast<std::ptrdiff_t>(sorts.size()) - 1;
      while (k >= 0 && ++pos[k] == sorts[k]->constants.size()) pos[k--] = 0;
      if (k < 0) break;
    }
  }
  return Universe(std::move(atoms));
}

}  // namespace absprob
