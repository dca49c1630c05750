#include "absprob/model.hpp"

#include "absprob/errors.hpp"

namespace absprob {

Model::Model(std::shared_ptr<const Universe> universe, std::vector<bool> values)
    : universe_(std::move(universe)), values_(std::move(values)) {
  if (values_.size() != universe_->size())
    throw WellFormednessError("model assigns " + std::to_string(values_.size()) +
                              " atoms but the universe has " + std::to_string(universe_->size()));
}

Model::Model(std::shared_ptr<const Universe> universe)
    : universe_(std::move(universe)), values_(universe_->size(), false) {}

std::vector<Literal> Model::literals() const {
  std::vector<Literal> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out.push_back(Literal{universe_->atom(i), values_[i]});
  return out;
}

bool evaluate(const Model& model, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: return model.value(f.ground_atom());
    case FormulaKind::Eq: {
      const auto& t = f.terms();
      if (t[0].variable || t[1].variable)
        throw WellFormednessError("cannot evaluate non-ground equality " + to_string(f));
      return t[0].name == t[1].name;
    }
    case FormulaKind::Not: return !evaluate(model, f.child(0));
    case FormulaKind::And:
      for (const auto& c : f.children())
        if (!evaluate(model, c)) return false;
      return true;
    case FormulaKind::Or:
      for (const auto& c : f.children())
        if (evaluate(model, c)) return true;
      return false;
    case FormulaKind::Implies: return !evaluate(model, f.child(0)) || evaluate(model, f.child(1));
    case FormulaKind::Iff: return evaluate(model, f.child(0)) == evaluate(model, f.child(1));
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      throw WellFormednessError("cannot evaluate quantified formula " + to_string(f));
  }
  return false;
}

Formula model_formula(const Model& model) {
  std::vector<Formula> parts;
  for (const auto& l : model.literals()) parts.push_back(Formula::literal(l));
  if (parts.size() == 1) return parts[0];
  return Formula::conjunction(std::move(parts));
}

}  // namespace absprob
