#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "absprob/abstraction.hpp"
#include "absprob/derivation.hpp"
#include "absprob/mapping.hpp"
#include "absprob/theory.hpp"
#include "absprob/wmc.hpp"

namespace absprob {

/// A symbol or a parenthesised list, with the position it started at.
struct SExpr {
  bool list = false;
  std::string symbol;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_symbol() const { return !list; }
  bool is_symbol(std::string_view s) const { return !list && symbol == s; }
  /// Leading symbol of a list, or "" when there is none.
  std::string_view head() const;
};

/// Reads every top-level expression. `;` starts a comment running to the end
/// of the line. Throws ParseError.
std::vector<SExpr> read_sexprs(std::string_view text);

/// Reads a formula tree. Names bound by an enclosing quantifier and names
/// starting with `?` are variables; every other argument is a constant.
Formula parse_formula(const SExpr& expr);

/// Infix syntax: `~`, `&`, `|`, `->` (right associative), `<->`, `t = u`,
/// `true`, `false`, `p`, `p(a,b)`, `forall x:sort. f`, `exists x:sort. f`.
Formula parse_infix(std::string_view text);

/// Sorts, predicates, (possibly quantified) sentences and weights. Weight
/// entries may use `?x` variables; they are expanded over the argument
/// sorts.
struct TheoryDocument {
  TheorySpec spec;
  WeightFn weights;

  WeightedTheory build() const { return WeightedTheory{ground_theory(spec), weights}; }
};

TheoryDocument parse_theory(std::string_view text);
TheoryDocument load_theory(const std::filesystem::path& path);

std::vector<MappingEntry> parse_mapping(std::string_view text, const Vocabulary& high);
std::vector<MappingEntry> load_mapping(const std::filesystem::path& path, const Vocabulary& high);

/// Hypothesis space; candidate formulas are over the given low-level
/// vocabulary.
HypothesisSpace parse_space(std::string_view text);
HypothesisSpace load_space(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace absprob
