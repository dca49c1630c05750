#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "absprob/formula.hpp"
#include "absprob/model.hpp"
#include "absprob/theory.hpp"

namespace absprob {

inline constexpr std::size_t kDefaultEnumerationCap = 24;

/// Enumeration cap from the ABSPROB_ENUM_CAP environment variable, falling
/// back to kDefaultEnumerationCap.
std::size_t default_enumeration_cap();

/// Satisfiability over the atoms mentioned in f.
bool is_satisfiable(const Formula& f);
/// Satisfiability of f together with the theory's sentences, over its universe.
bool is_satisfiable(const Formula& f, const Theory& within);
bool entails(const Theory& theory, const Formula& f);
/// Validity over the atoms mentioned in f.
bool is_valid(const Formula& f);
bool equivalent(const Formula& a, const Formula& b);

/// First model of theory ∧ extra in canonical order (atom index order,
/// true before false).
std::optional<Model> find_model(const Theory& theory, const Formula& extra = Formula::top());

/// Streams the models of theory ∧ extra in canonical order until `visit`
/// returns false. Throws CapExceeded when the universe exceeds `cap`.
void for_each_model(const Theory& theory, const Formula& extra,
                    const std::function<bool(const Model&)>& visit,
                    std::size_t cap = default_enumeration_cap());

std::vector<Model> all_models(const Theory& theory, std::size_t cap = default_enumeration_cap());

}  // namespace absprob
