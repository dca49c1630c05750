#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace absprob {

struct Sort {
  std::string name;
  std::vector<std::string> constants;
};

struct PredicateDecl {
  std::string name;
  std::vector<std::string> arg_sorts;

  std::size_t arity() const { return arg_sorts.size(); }
};

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

/// "diff(B,E)", or "p" for a nullary predicate.
std::string to_string(const GroundAtom& atom);

struct GroundAtomHash {
  std::size_t operator()(const GroundAtom& atom) const noexcept;
};

struct Literal {
  GroundAtom atom;
  bool positive = true;

  Literal complement() const { return Literal{atom, !positive}; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

std::string to_string(const Literal& literal);

/// Indexed set of ground atoms. Index order is the canonical atom order used
/// for model enumeration and witness reporting.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<GroundAtom> atoms);

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const GroundAtom& atom(std::size_t index) const { return atoms_[index]; }
  const std::vector<GroundAtom>& atoms() const { return atoms_; }

  std::optional<std::size_t> find(const GroundAtom& atom) const;
  bool contains(const GroundAtom& atom) const { return find(atom).has_value(); }
  /// Throws WellFormednessError for atoms outside the universe.
  std::size_t index_of(const GroundAtom& atom) const;

 private:
  std::vector<GroundAtom> atoms_;
  std::unordered_map<GroundAtom, std::size_t, GroundAtomHash> index_;
};

/// Finite relational vocabulary: sorts with their constants and typed
/// predicates. The atom universe is the full grounding of every predicate.
class Vocabulary {
 public:
  void add_sort(std::string name, std::vector<std::string> constants);
  void add_predicate(std::string name, std::vector<std::string> arg_sorts);

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<PredicateDecl>& predicates() const { return predicates_; }

  const Sort* find_sort(std::string_view name) const;
  const PredicateDecl* find_predicate(std::string_view name) const;
  bool sort_has(std::string_view sort, std::string_view constant) const;

  /// Throws WellFormednessError unless the atom's predicate is declared, the
  /// arity matches and each constant belongs to its argument sort.
  void check_atom(const GroundAtom& atom) const;

  /// Predicate declaration order, then argument tuples in sort order.
  Universe universe() const;

 private:
  std::vector<Sort> sorts_;
  std::vector<PredicateDecl> predicates_;
  std::unordered_map<std::string, std::size_t> sort_index_;
  std::unordered_map<std::string, std::size_t> predicate_index_;
};

}  // namespace absprob
