#pragma once

#include <memory>
#include <vector>

#include "absprob/formula.hpp"
#include "absprob/vocabulary.hpp"

namespace absprob {

/// Vocabulary plus sentences that may still contain quantifiers.
struct TheorySpec {
  Vocabulary vocabulary;
  std::vector<Formula> sentences;
};

/// Ground theory over a vocabulary. Immutable; copies share state.
class Theory {
 public:
  /// Checks every sentence is ground and well-formed against the vocabulary.
  Theory(std::shared_ptr<const Vocabulary> vocabulary, std::vector<Formula> sentences);
  Theory(Vocabulary vocabulary, std::vector<Formula> sentences);

  const Vocabulary& vocabulary() const { return *vocabulary_; }
  const std::shared_ptr<const Vocabulary>& vocabulary_ptr() const { return vocabulary_; }
  const Universe& universe() const { return *universe_; }
  const std::shared_ptr<const Universe>& universe_ptr() const { return universe_; }
  const std::vector<Formula>& sentences() const { return sentences_; }

  /// Conjunction of all sentences.
  Formula conjunction() const { return Formula::conjunction(sentences_); }

  /// Same vocabulary, extra sentences appended.
  Theory with(std::vector<Formula> extra) const;

 private:
  std::shared_ptr<const Vocabulary> vocabulary_;
  std::shared_ptr<const Universe> universe_;
  std::vector<Formula> sentences_;
};

/// Expands quantifiers over their sorts and resolves constant equalities.
/// Template variables left free in a sentence are read as universally
/// quantified over the sort of their first argument position.
Theory ground_theory(const TheorySpec& spec);

/// Grounds one formula against a vocabulary; free variables are an error.
Formula ground_formula(const Formula& f, const Vocabulary& vocabulary);

/// Free variables of a formula together with the sort of their first
/// argument position, in first-occurrence order.
std::vector<std::pair<std::string, std::string>> free_variables(const Formula& f,
                                                                const Vocabulary& vocabulary);

/// Throws WellFormednessError unless f is ground and every atom is in the universe.
void check_formula(const Formula& f, const Universe& universe);

}  // namespace absprob
