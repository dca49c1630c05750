#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absprob/vocabulary.hpp"

namespace absprob {

/// A constant, or a variable bound by an enclosing quantifier (or by an
/// implicit template binder such as `?x`).
struct Term {
  std::string name;
  bool variable = false;

  static Term constant(std::string name) { return Term{std::move(name), false}; }
  static Term var(std::string name) { return Term{std::move(name), true}; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class FormulaKind { True, False, Atom, Eq, Not, And, Or, Implies, Iff, Forall, Exists };

/// Immutable formula tree with shared subterms. Cheap to copy.
class Formula {
 public:
  /// Defaults to True.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula atom(GroundAtom atom);
  static Formula atom(std::string predicate, std::vector<Term> terms);
  static Formula literal(const Literal& literal);
  static Formula eq(Term lhs, Term rhs);
  static Formula negation(Formula f);
  /// Empty list gives True.
  static Formula conjunction(std::vector<Formula> parts);
  /// Empty list gives False.
  static Formula disjunction(std::vector<Formula> parts);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula forall(std::string var, std::string sort, Formula body);
  static Formula exists(std::string var, std::string sort, Formula body);

  FormulaKind kind() const;
  bool is_ground() const;

  /// Atom: predicate name and argument terms.
  const std::string& predicate() const;
  const std::vector<Term>& terms() const;
  /// Atom with ground terms only.
  GroundAtom ground_atom() const;

  /// Not: one child; And/Or: n children; Implies/Iff: two; quantifiers: body.
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i) const { return children()[i]; }

  /// Quantifier binder.
  const std::string& var() const;
  const std::string& sort() const;
  const Formula& body() const { return child(0); }

  /// Node count.
  std::size_t size() const;

  /// Identity of the shared node, for memoization.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static std::shared_ptr<const Node> compound(FormulaKind kind, std::vector<Formula> children);
  std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&&(const Formula& a, const Formula& b);
Formula operator||(const Formula& a, const Formula& b);

/// Concrete infix syntax: `~`, `&`, `|`, `->`, `<->`, `forall x:sort. body`.
std::string to_string(const Formula& f);

/// Ground atoms occurring in a ground formula, deduplicated, in first-occurrence order.
std::vector<GroundAtom> atoms_of(const Formula& f);

/// The formula as a literal when it is an atom or a negated atom.
std::optional<Literal> as_literal(const Formula& f);

/// Replaces free occurrences of a variable by a constant.
Formula substitute(const Formula& f, const std::string& var, const std::string& constant);

/// Constant-folds True/False and ground equalities, flattens nested And/Or.
Formula simplify(const Formula& f);

/// Rewrites Implies and Iff into Not/And/Or.
Formula expand_connectives(const Formula& f);

}  // namespace absprob
