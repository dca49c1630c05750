#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace absprob {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown sort/predicate/constant, arity mismatch, unbound variable, or an
/// atom outside the universe it is evaluated against.
class WellFormednessError : public Error {
 public:
  using Error::Error;
};

/// Enumeration requested over a universe larger than the configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t universe, std::size_t cap)
      : Error("universe of " + std::to_string(universe) + " atoms exceeds enumeration cap " +
              std::to_string(cap)),
        universe_size(universe),
        cap(cap) {}
  std::size_t universe_size;
  std::size_t cap;
};

class CnfBudgetExceeded : public Error {
 public:
  explicit CnfBudgetExceeded(std::size_t budget)
      : Error("CNF conversion exceeds budget of " + std::to_string(budget) + " clauses"),
        budget(budget) {}
  std::size_t budget;
};

/// WMC(theory, w) = 0, so probabilities are undefined.
class ZeroPartition : public Error {
 public:
  using Error::Error;
};

/// WMC(evidence ∧ theory, w) = 0.
class ZeroEvidence : public ZeroPartition {
 public:
  using ZeroPartition::ZeroPartition;
};

class NonSeparable : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Evidence literal that is mentioned purely in no mapping target.
class EmptyConcretization : public Error {
 public:
  using Error::Error;
};

/// Evidence that does not entail its m-weakening.
class NotDefinable : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

}  // namespace absprob
